// Copyright 2026 The ssum-transfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ssum: command-line driver for data generation, staged training,
// transplantation, decoding, evaluation and table runs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssum/metrics/report.hpp"
#include "ssum/pipeline/runner.hpp"

namespace {

namespace fs = std::filesystem;
using ssum::pipeline::ExperimentConfig;
using ssum::pipeline::Runner;
using ssum::pipeline::SystemId;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "runs";
  std::vector<double> fractions;
  std::vector<std::string> systems;
  std::string stage;
  std::string hyp;
  std::string ref;
  bool quiet = false;
};

ExperimentConfig load_config(const Options& o) {
  ExperimentConfig c = o.config.empty() ? ExperimentConfig::toy() : ExperimentConfig::load(o.config);
  if (o.seed) c.seed = *o.seed;
  c.validate();
  return c;
}

double single_fraction(const Options& o) {
  if (o.fractions.size() > 1) throw ssum::ArgumentError("this command takes a single --fraction");
  return o.fractions.empty() ? 1.0 : o.fractions.front();
}

SystemId single_system(const Options& o) {
  if (o.systems.size() != 1) throw ssum::ArgumentError("this command needs exactly one --system");
  return ssum::pipeline::system_from_string(o.systems.front());
}

std::string transfer_tag(const Options& o) {
  const SystemId s = single_system(o);
  if (s != SystemId::P1 && s != SystemId::P2 && s != SystemId::P3) {
    throw ssum::ArgumentError("transplant variants are P-1, P-2 and P-3");
  }
  return std::string(ssum::pipeline::to_string(s));
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Experiment config (JSON); built-in toy defaults if omitted");
  cmd->add_option("--seed", o.seed, "Master seed for initialization and training");
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  cmd->add_flag("--quiet", o.quiet, "Suppress progress lines");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-stage transfer learning for end-to-end speech summarization"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen-data", "Write the synthetic corpus to <out>/corpus");
  auto* asr = app.add_subcommand("pretrain-asr", "Pre-train the speech recognizer on the full training split");
  auto* lm = app.add_subcommand("pretrain-lm", "Pre-train the denoising language model");
  auto* finetune = app.add_subcommand("finetune", "Fine-tune: ssum, tsum, augment, or transfer (with --system)");
  auto* transplant = app.add_subcommand("transplant", "Combine an encoder and a decoder for P-1, P-2 or P-3");
  auto* decode = app.add_subcommand("decode", "Decode the evaluation split with a trained system");
  auto* evaluate = app.add_subcommand("evaluate", "Score id<TAB>text hypotheses against references");
  auto* table = app.add_subcommand("run-table", "Train, decode and score systems; one table per fraction");
  auto* show = app.add_subcommand("show-config", "Print the effective experiment config");

  for (CLI::App* cmd : {gen, asr, lm, finetune, transplant, decode, evaluate, table, show}) add_common(cmd, o);
  for (CLI::App* cmd : {finetune, transplant, decode, evaluate}) {
    cmd->add_option("--fraction", o.fractions, "Fraction of the fine-tuning data")->expected(1);
    cmd->add_option("--system", o.systems, "System id (C-1, B-1, B-2, P-1, P-2, P-3)")->expected(1);
  }
  table->add_option("--fraction", o.fractions, "Fractions of the fine-tuning data (repeat or comma-separate)")
      ->delimiter(',');
  table->add_option("--system", o.systems, "Systems to run (repeat or comma-separate); all by default")
      ->delimiter(',');
  finetune->add_option("--stage", o.stage, "ssum, tsum, augment or transfer")
      ->required()
      ->check(CLI::IsMember({"ssum", "tsum", "augment", "transfer"}));
  evaluate->add_option("--hyp", o.hyp, "Hypothesis file");
  evaluate->add_option("--ref", o.ref, "Reference file");

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig config = load_config(o);
    if (show->parsed()) {
      std::cout << config.to_json() << "\n";
      return 0;
    }
    Runner runner(config, o.out, o.quiet ? nullptr : &std::cerr);

    if (gen->parsed()) {
      std::cout << runner.write_corpus().string() << "\n";
    } else if (asr->parsed()) {
      std::cout << runner.run_stage("asr", 1.0, false).checkpoint.string() << "\n";
    } else if (lm->parsed()) {
      std::cout << runner.run_stage("lm", 1.0, false).checkpoint.string() << "\n";
    } else if (finetune->parsed()) {
      const std::string stage = o.stage == "transfer" ? "transfer-" + transfer_tag(o) : o.stage;
      std::cout << runner.run_stage(stage, single_fraction(o), false).checkpoint.string() << "\n";
    } else if (transplant->parsed()) {
      std::cout << runner.run_stage("transplant-" + transfer_tag(o), single_fraction(o), false).checkpoint.string()
                << "\n";
    } else if (decode->parsed()) {
      const auto r = runner.decode_system(single_system(o), single_fraction(o));
      std::cout << r.hypotheses.string() << "\n";
    } else if (evaluate->parsed()) {
      fs::path hyp = o.hyp, ref = o.ref;
      if (hyp.empty() || ref.empty()) {
        const fs::path dir =
            runner.fraction_dir(single_fraction(o)) / std::string(ssum::pipeline::to_string(single_system(o)));
        if (hyp.empty()) hyp = dir / "hypotheses.txt";
        if (ref.empty()) ref = dir / "references.txt";
      }
      const auto report = ssum::metrics::evaluate_files(hyp, ref);
      std::cout << report.to_table() << report.to_key_values();
    } else if (table->parsed()) {
      std::vector<SystemId> systems;
      for (const std::string& s : o.systems) systems.push_back(ssum::pipeline::system_from_string(s));
      if (systems.empty()) systems = ssum::pipeline::all_systems();
      std::vector<double> fractions = o.fractions.empty() ? std::vector<double>{1.0} : o.fractions;
      std::vector<ssum::pipeline::ResultsTable> tables;
      bool all_ok = true;
      for (double f : fractions) {
        tables.push_back(runner.run_table(systems, f));
        std::cout << tables.back().to_text() << "\n";
        for (const auto& row : tables.back().rows) all_ok = all_ok && row.ok;
      }
      if (tables.size() > 1) std::cout << ssum::pipeline::monotonicity_report(tables);
      return all_ok ? 0 : 1;
    }
  } catch (const ssum::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
