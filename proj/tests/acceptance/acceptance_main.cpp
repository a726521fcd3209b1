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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grad_cases.hpp"
#include "oracles.hpp"
#include "transfer_checks.hpp"
#include "ssum/decoding/search.hpp"
#include "ssum/metrics/metrics.hpp"
#include "ssum/pipeline/experiment.hpp"
#include "ssum/pipeline/runner.hpp"
#include "ssum/training/loss.hpp"
#include "ssum/training/trainer.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ssum;

// Pinned tolerances and budgets.
constexpr double kGradTolerance = 1e-4;
constexpr double kGradStep = 1e-5;
constexpr double kGradFloor = 1e-8;
constexpr std::uint64_t kGradSeeds = 20;
constexpr std::size_t kToyCoordsPerTensor = 8;
constexpr double kGradBudgetSeconds = 120.0;
constexpr double kDecodeBudgetSeconds = 60.0;
constexpr double kMetricBudgetSeconds = 60.0;
constexpr double kLogKTolerance = 1e-12;
constexpr double kSimplexTolerance = 1e-9;
constexpr double kToyRouge1Floor = 80.0;
constexpr double kToyMarginOverUntrained = 50.0;
constexpr double kToyBudgetSeconds = 30.0 * 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  fs::path work;
  std::string cli;
  bool verbose = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const fs::path& p) { return testing::slurp(p); }

int run_command(const std::string& cmd) { return std::system(cmd.c_str()); }

fs::path fresh(const fs::path& p) {
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1. Analytic gradients against central differences.
Outcome gradients(const Context&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cases = testing::primitive_cases();
  double worst = 0.0;
  std::string worst_name;
  std::size_t checked = 0;
  const auto toy_vocab = testing::tiny_vocabulary(pipeline::ExperimentConfig::toy().corpus.vocab_words);
  for (std::uint64_t seed = 1; seed <= kGradSeeds; ++seed) {
    for (const auto& c : cases) {
      Rng rng(derive_seed(seed, fnv64(c.name)));
      const auto r = testing::gradcheck(c.loss, c.inputs(rng), kGradStep, kGradFloor);
      checked += r.checked;
      if (r.max_relative_error > worst) worst = r.max_relative_error, worst_name = c.name;
    }
    for (auto kind : {model::EncoderKind::acoustic, model::EncoderKind::text}) {
      // Every coordinate of a miniature model, then sampled coordinates of
      // each tensor at the toy experiment's dimensions.
      const auto tiny = testing::model_gradcheck(kind, seed, kGradStep, kGradFloor);
      const auto toy_config = kind == model::EncoderKind::acoustic ? model::ModelConfig::toy_acoustic(toy_vocab.size())
                                                                   : model::ModelConfig::toy_text(toy_vocab.size());
      const auto toy = testing::model_gradcheck(toy_config, toy_vocab, seed, kToyCoordsPerTensor, kGradStep, kGradFloor);
      checked += tiny.checked + toy.checked;
      for (const auto& [r, tag] : {std::pair{tiny, "tiny"}, std::pair{toy, "toy"}}) {
        if (r.max_relative_error > worst) {
          worst = r.max_relative_error;
          worst_name = std::string(tag) + "-seq2seq-" + std::string(model::to_string(kind));
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= kGradTolerance && secs <= kGradBudgetSeconds,
          std::to_string(cases.size()) + " primitives + full loss of 4 models x " + std::to_string(kGradSeeds) +
              " seeds, " + std::to_string(checked) + " coordinates, max rel err " + fmt("%.2e", worst) +
              (worst_name.empty() ? "" : " (" + worst_name + ")") + ", " + fmt("%.1f", secs) + "s"};
}

// 2. Transplants copy bits; self-transplant is the identity; checkpoints
// round-trip.
Outcome transplant_exactness(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto r = testing::check_transfer_exactness(fresh(ctx.work / "transfer"), seed * 100);
    if (!(r.variants_exact && r.self_identity && r.round_trip_exact)) {
      ok = false;
      detail += r.detail;
    }
  }
  return {ok, "P-1/P-2/P-3 bit-equal to sources, self-transplant identity, save/load bit-exact over 5 seeds" +
                  (detail.empty() ? "" : ": " + detail) + ", " + fmt("%.1f", seconds_since(t0)) + "s"};
}

// 3. Beam search against greedy and against exhaustive enumeration.
Outcome decoding_oracles(const Context&) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t greedy_mismatch = 0, exhaustive_mismatch = 0, exhaustive_cases = 0;
  Rng rng(77);
  for (std::uint64_t m = 0; m < 100; ++m) {
    const auto kind = m % 2 ? model::EncoderKind::text : model::EncoderKind::acoustic;
    const auto model = testing::small_model(kind, 1000 + m);
    const auto source = testing::random_source(model.config(), rng);
    decoding::BeamConfig c;
    c.width = 1;
    c.max_length = model.config().max_decode_len;
    c.length_penalty = rng.uniform(-1.0, 1.0);
    c.end_detection = m % 3 != 0;
    const decoding::ModelScorer scorer(model, source);
    if (decoding::beam_search(scorer, c).front().output() != decoding::greedy_decode(scorer, c.max_length)) {
      ++greedy_mismatch;
    }
  }
  for (std::size_t content : {1u, 2u}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const testing::RiggedScorer scorer(content, seed);
      for (double alpha : {-1.5, -0.3, 0.0, 0.4, 1.5}) {
        const auto want = testing::exhaustive_best(scorer, 3, alpha);
        for (bool end : {false, true}) {
          decoding::BeamConfig c;
          c.width = 27;
          c.max_length = 3;
          c.length_penalty = alpha;
          c.end_detection = end;
          const auto got = decoding::beam_search(scorer, c).front();
          ++exhaustive_cases;
          if (got.tokens != want.tokens) ++exhaustive_mismatch;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {greedy_mismatch == 0 && exhaustive_mismatch == 0 && secs <= kDecodeBudgetSeconds,
          "width 1 vs greedy: " + std::to_string(greedy_mismatch) + "/100 mismatches; width 27 vs enumeration: " +
              std::to_string(exhaustive_mismatch) + "/" + std::to_string(exhaustive_cases) + " mismatches, " +
              fmt("%.1f", secs) + "s"};
}

std::vector<std::string> words(Rng& rng, std::size_t lo, std::size_t hi, std::size_t alphabet) {
  std::vector<std::string> out(rng.between(lo, hi));
  for (auto& w : out) w = std::string(1, static_cast<char>('a' + rng.index(alphabet)));
  return out;
}

// 4. Metrics against dynamic-programming and exhaustive oracles.
Outcome metric_oracles(const Context&) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(4);
  std::size_t rouge_bad = 0, meteor_bad = 0, wer_bad = 0;
  for (int i = 0; i < 200; ++i) {
    const auto h = words(rng, 1, 15, 6), r = words(rng, 1, 15, 6);
    const std::size_t lcs = testing::dp_lcs(h, r);
    const double f = lcs == 0 ? 0.0 : 200.0 * static_cast<double>(lcs) / static_cast<double>(h.size() + r.size());
    if (metrics::lcs_length(h, r) != lcs || std::abs(metrics::rouge_l(h, r).f1 - f) > 1e-12) ++rouge_bad;
  }
  for (int i = 0; i < 500; ++i) {
    const auto h = words(rng, 1, 7, 5), r = words(rng, 1, 7, 5);
    const auto [m, chunks] = testing::exhaustive_alignment(h, r);
    const double want = metrics::meteor_from_alignment({m, chunks}, h.size(), r.size());
    const auto got = metrics::meteor_alignment(h, r);
    if (got.matches != m || got.chunks != chunks || metrics::meteor(h, r) != want) ++meteor_bad;
  }
  for (int i = 0; i < 200; ++i) {
    const auto h = words(rng, 0, 12, 4), r = words(rng, 1, 12, 4);
    const double want = 100.0 * static_cast<double>(testing::dp_edit(h, r)) / static_cast<double>(r.size());
    if (std::abs(metrics::wer(h, r) - want) > 1e-12) ++wer_bad;
  }
  const std::vector<std::string> cat{"the", "cat", "sat"}, cat2{"the", "cat"};
  const double r1 = metrics::rouge_n(cat, cat2, 1).f1;
  std::vector<std::string> ten;
  for (int i = 0; i < 10; ++i) ten.push_back("t" + std::to_string(i));
  const double m10 = metrics::meteor(ten, ten);
  const bool hand = r1 == 80.0 && m10 == 0.9995;
  const double secs = seconds_since(t0);
  return {rouge_bad == 0 && meteor_bad == 0 && wer_bad == 0 && hand && secs <= kMetricBudgetSeconds,
          "ROUGE-L " + std::to_string(rouge_bad) + "/200, METEOR " + std::to_string(meteor_bad) + "/500, WER " +
              std::to_string(wer_bad) + "/200 mismatches; ROUGE-1 " + fmt("%.17g", r1) + ", METEOR(10 identical) " +
              fmt("%.17g", m10) + ", " + fmt("%.2f", secs) + "s"};
}

// 5. Label-smoothed cross-entropy analytics.
Outcome loss_analytics(const Context&) {
  double worst = 0.0;
  for (std::size_t k : {4u, 50u, 500u}) {
    const std::vector<int> targets{1, static_cast<int>(k / 2), static_cast<int>(k - 1)};
    const compute::Tensor uniform({3, k}, 1.0 / static_cast<double>(k));
    worst = std::max(worst, std::abs(training::label_smoothed_ce(uniform, targets, 0.1, -1) -
                                     std::log(static_cast<double>(k))));
    compute::Tape tape;
    const auto v = training::label_smoothed_ce(tape.variable(compute::Tensor({3, k})), targets, 0.1, -1);
    worst = std::max(worst, std::abs(v.value().item() - std::log(static_cast<double>(k))));
  }
  // Minimise over the simplex with softmax-parameterised gradient descent.
  const double eps = 0.1;
  const std::vector<int> target{1};
  const compute::Tensor y = training::smoothed_targets(target, 4, eps, -1);
  compute::Tensor z({1, 4});
  for (int it = 0; it < 5000; ++it) {
    compute::Tape tape;
    auto v = tape.variable(z);
    const auto g = tape.backward(training::label_smoothed_ce(v, target, eps, -1));
    for (std::size_t i = 0; i < 4; ++i) z[i] -= g.of(v)[i];
  }
  compute::Tape tape(false);
  const compute::Tensor p = compute::softmax(tape.constant(z)).value();
  double gap = 0.0;
  for (std::size_t i = 0; i < 4; ++i) gap = std::max(gap, std::abs(p[i] - y[i]));
  return {worst <= kLogKTolerance && gap <= kSimplexTolerance,
          "uniform CE - ln K max |diff| " + fmt("%.2e", worst) + " for K in {4, 50, 500}; simplex minimiser vs y_LS max |diff| " +
              fmt("%.2e", gap)};
}

// 6. Calibrated toy experiment.
Outcome toy_pipeline(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto config = pipeline::ExperimentConfig::toy();
  const fs::path out = fresh(ctx.work / "toy");
  std::ofstream log(out / "progress.log");
  pipeline::Runner runner(config, out, &log);
  const auto table = runner.run_table(pipeline::all_systems(), 1.0);
  std::cout << table.to_text() << "\n";

  const auto& corpus = runner.corpus();
  const model::Seq2SeqModel untrained(config.acoustic_model, corpus.vocabulary(),
                                      derive_seed(config.seed, fnv64("untrained")));
  const auto refs = pipeline::references(corpus.evaluation, corpus.vocabulary());
  const auto hyps = pipeline::decode_summaries(untrained, corpus.evaluation, config.beam);
  std::vector<metrics::ScoredPair> pairs;
  for (std::size_t i = 0; i < refs.size(); ++i) pairs.push_back({refs[i].id, hyps[i].text, refs[i].text});
  const double floor = metrics::score(pairs).rouge1;

  bool ok = true;
  std::string detail = "untrained ROUGE-1 " + fmt("%.2f", floor);
  for (const auto& row : table.rows) {
    if (row.system == pipeline::SystemId::C1) continue;
    const std::string name(pipeline::to_string(row.system));
    if (!row.ok) {
      ok = false;
      detail += "; " + name + " failed: " + row.error;
      continue;
    }
    detail += "; " + name + " " + fmt("%.2f", row.scores.rouge1);
    if (row.scores.rouge1 - floor < kToyMarginOverUntrained) ok = false;
    if (row.system == pipeline::SystemId::B1 && row.scores.rouge1 < kToyRouge1Floor) ok = false;
  }
  const double secs = seconds_since(t0);
  if (secs > kToyBudgetSeconds) ok = false;
  return {ok, detail + "; " + fmt("%.0f", secs) + "s"};
}

std::string smoke_config(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path p = dir / "smoke.json";
  std::ofstream(p) << pipeline::ExperimentConfig::smoke().to_json();
  return p.string();
}

// 7. Identical configs give bit-identical machine-readable tables.
Outcome reproducibility(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path base = fresh(ctx.work / "repro");
  const std::string cfg = smoke_config(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = ctx.cli + " run-table --quiet --config " + cfg + " --seed 5 --out " +
                            (base / run).string() + " > " + (base / (std::string(run) + ".txt")).string();
    if (run_command(cmd) != 0) return {false, "run-table exited non-zero: " + cmd};
  }
  const std::string a = slurp(base / "a" / "fraction-1" / "results.kv");
  const std::string b = slurp(base / "b" / "fraction-1" / "results.kv");
  const bool same = !a.empty() && a == b;
  return {same, "two smoke run-table invocations in separate directories: results.kv " +
                    std::string(same ? "bit-identical" : "differ") + " (" + std::to_string(a.size()) + " bytes), " +
                    fmt("%.1f", seconds_since(t0)) + "s"};
}

// 8. Every batch of an augmented epoch is all real or all synthetic.
Outcome homogeneity(const Context&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto config = pipeline::ExperimentConfig::toy();
  const data::Corpus corpus = data::generate_corpus(config.corpus);
  const auto text = data::generate_external_text(corpus.lexicon, config.external_text);
  const auto mixed = data::merge(data::view(corpus.train, data::ViewKind::ssum),
                                 data::synth_augment(text, corpus.lexicon, config.corpus.frames_per_word,
                                                     config.synthetic_voice));
  const auto valid = data::view(corpus.validation, data::ViewKind::ssum);
  training::TrainConfig tc = config.stages.augment;
  tc.max_epochs = 1;
  std::size_t batches = 0, mixed_batches = 0, real = 0, artificial = 0, flag_mismatch = 0;
  std::vector<int> seen(mixed.size(), 0);
  training::TrainHooks hooks;
  hooks.on_batch = [&](const training::BatchEvent& e) {
    ++batches;
    std::set<bool> kinds;
    for (std::size_t i : *e.indices) {
      kinds.insert(mixed.examples[i].artificial);
      ++seen[i];
    }
    if (kinds.size() != 1) ++mixed_batches;
    if (kinds.size() == 1 && *kinds.begin() != e.artificial) ++flag_mismatch;
    (e.artificial ? artificial : real) += 1;
  };
  const model::Seq2SeqModel start(config.acoustic_model, corpus.vocabulary(), 1);
  training::train_stage(start, mixed, valid, tc, hooks);
  const bool covered = std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
  return {mixed_batches == 0 && flag_mismatch == 0 && real > 0 && artificial > 0 && covered,
          std::to_string(batches) + " batches (" + std::to_string(real) + " real, " + std::to_string(artificial) +
              " synthetic) over " + std::to_string(mixed.size()) + " examples, " + std::to_string(mixed_batches) +
              " mixed, every example seen once: " + (covered ? "yes" : "no") + ", " +
              fmt("%.1f", seconds_since(t0)) + "s"};
}

// 9. Fraction sweep emits one table per fraction.
Outcome fraction_sweep(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path base = fresh(ctx.work / "sweep");
  const std::string cfg = smoke_config(base);
  const fs::path stdout_path = base / "stdout.txt";
  const std::string cmd = ctx.cli + " run-table --quiet --config " + cfg + " --fraction 0.25,0.5,1.0 --out " +
                          (base / "run").string() + " > " + stdout_path.string();
  const int rc = run_command(cmd);
  const std::string text = slurp(stdout_path);
  std::size_t tables = 0;
  for (std::size_t pos = 0; (pos = text.find("fraction ", pos)) != std::string::npos; ++pos) {
    if (pos == 0 || text[pos - 1] == '\n') ++tables;
  }
  bool files = true;
  for (const char* f : {"fraction-0.25", "fraction-0.5", "fraction-1"}) {
    files = files && fs::exists(base / "run" / f / "results.kv");
  }
  const bool report = text.find("ROUGE-L by training fraction") != std::string::npos;
  const auto nl = text.find("ROUGE-L by training fraction");
  if (report) std::cout << text.substr(nl);
  return {rc == 0 && tables == 3 && files && report,
          std::to_string(tables) + " tables, results files " + (files ? "present" : "missing") +
              ", monotonicity " + (report ? "reported" : "missing") + " (not asserted), " +
              fmt("%.1f", seconds_since(t0)) + "s"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Context ctx;
  ctx.work = fs::temp_directory_path() / "ssum-acceptance";
  std::vector<int> only;
  app.add_option("--work", ctx.work, "Scratch directory");
  app.add_option("--cli", ctx.cli, "Path to the ssum command-line tool")->required();
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(ctx.work);

  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"gradient correctness", gradients},
      {"transplant exactness", transplant_exactness},
      {"decoding oracles", decoding_oracles},
      {"metric oracles", metric_oracles},
      {"loss analytics", loss_analytics},
      {"end-to-end toy pipeline", toy_pipeline},
      {"reproducibility", reproducibility},
      {"batch homogeneity under augmentation", homogeneity},
      {"fraction sweep", fraction_sweep},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
              << o.detail << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
