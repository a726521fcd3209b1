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

#include "ssum/pipeline/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "../internal/json_io.hpp"
#include "ssum/common/hash.hpp"
#include "ssum/common/random.hpp"
#include "ssum/transfer/transplant.hpp"

namespace ssum::pipeline {

namespace fs = std::filesystem;
using transfer::Provenance;

namespace {

std::string fixed(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string stage_of_action(StageAction a) { return std::string(to_string(a)); }

Provenance provenance_of(StageAction a) {
  switch (a) {
    case StageAction::pretrain_asr: return Provenance::asr;
    case StageAction::pretrain_lm: return Provenance::lm;
    case StageAction::finetune_ssum:
    case StageAction::finetune_augment: return Provenance::ssum;
    case StageAction::finetune_tsum: return Provenance::tsum;
    case StageAction::transplant:
    case StageAction::finetune_transfer: return Provenance::transferred;
  }
  return Provenance::transferred;
}

std::string text_of(const model::Vocabulary& vocab, const std::vector<int>& ids) { return vocab.decode(ids); }

std::vector<data::IdText> summarize_tokens(const model::Seq2SeqModel& tsum,
                                           const std::vector<std::pair<std::string, std::vector<int>>>& inputs,
                                           const decoding::BeamConfig& beam) {
  std::vector<data::IdText> out;
  for (const auto& [id, tokens] : inputs) {
    std::vector<int> src = tokens;
    // The text encoder needs at least one position.
    if (src.empty()) src.push_back(model::Vocabulary::kEos);
    if (src.size() > tsum.config().max_source_len) src.resize(tsum.config().max_source_len);
    const auto hyps = decoding::beam_search(tsum, model::Source(src), beam);
    out.push_back({id, hyps.empty() ? std::string() : text_of(tsum.vocabulary(), hyps.front().output())});
  }
  return out;
}

}  // namespace

const std::vector<ReferenceScores>& full_scale_reference() {
  static const std::vector<ReferenceScores> table = {
      {SystemId::C1, 61.1, 43.3, 55.7, 30.5}, {SystemId::B1, 64.9, 49.6, 60.8, 33.0},
      {SystemId::B2, 65.3, 50.7, 61.3, 33.2}, {SystemId::P1, 67.0, 52.1, 63.2, 34.4},
      {SystemId::P2, 64.0, 48.4, 59.9, 32.5}, {SystemId::P3, 67.0, 52.3, 63.2, 34.2},
  };
  return table;
}

std::vector<data::IdText> decode_summaries(const model::Seq2SeqModel& model,
                                           std::span<const data::Triplet> split,
                                           const decoding::BeamConfig& beam) {
  std::vector<data::IdText> out;
  out.reserve(split.size());
  for (const data::Triplet& t : split) {
    const auto hyps = decoding::beam_search(model, model::Source(t.features), beam);
    out.push_back({t.id, hyps.empty() ? std::string() : text_of(model.vocabulary(), hyps.front().output())});
  }
  return out;
}

std::vector<data::IdText> decode_transcripts(const model::Seq2SeqModel& asr,
                                             std::span<const data::Triplet> split,
                                             const decoding::BeamConfig& beam) {
  return decode_summaries(asr, split, beam);
}

std::vector<data::IdText> decode_cascade(const model::Seq2SeqModel& asr, const model::Seq2SeqModel& tsum,
                                         std::span<const data::Triplet> split,
                                         const decoding::BeamConfig& beam) {
  std::vector<std::pair<std::string, std::vector<int>>> transcripts;
  for (const data::Triplet& t : split) {
    const auto hyps = decoding::beam_search(asr, model::Source(t.features), beam);
    transcripts.emplace_back(t.id, hyps.empty() ? std::vector<int>{} : hyps.front().output());
  }
  return summarize_tokens(tsum, transcripts, beam);
}

std::vector<data::IdText> references(std::span<const data::Triplet> split, const model::Vocabulary& vocab,
                                     bool transcripts) {
  std::vector<data::IdText> out;
  out.reserve(split.size());
  for (const data::Triplet& t : split) {
    out.push_back({t.id, text_of(vocab, transcripts ? t.transcription : t.summary)});
  }
  return out;
}

Runner::Runner(ExperimentConfig config, fs::path out, std::ostream* log)
    : config_(std::move(config)), out_(std::move(out)), log_(log) {
  config_.validate();
}

void Runner::say(const std::string& line) const {
  if (log_) *log_ << line << std::endl;
}

const data::Corpus& Runner::corpus() {
  if (!corpus_) {
    const fs::path dir = out_ / "corpus";
    if (fs::exists(dir / "corpus.json")) {
      auto stored = std::make_unique<data::Corpus>(data::read_corpus(dir));
      if (stored->config == config_.corpus) {
        say("corpus: reading " + dir.string());
        corpus_ = std::move(stored);
        return *corpus_;
      }
      say("corpus: " + dir.string() + " has a different config; regenerating in memory");
    }
    corpus_ = std::make_unique<data::Corpus>(data::generate_corpus(config_.corpus));
  }
  return *corpus_;
}

fs::path Runner::write_corpus() {
  const fs::path dir = out_ / "corpus";
  corpus_ = std::make_unique<data::Corpus>(data::generate_corpus(config_.corpus));
  data::write_corpus(*corpus_, dir);
  return dir;
}

fs::path Runner::fraction_dir(double fraction) const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fraction-%.4g", fraction);
  return out_ / buf;
}

PlannedStage Runner::find_stage(const std::string& name) const {
  for (SystemId s : all_systems()) {
    for (const PlannedStage& st : make_plan(s, 1.0, out_, config_.seed).stages) {
      if (st.name == name) return st;
    }
  }
  throw ArgumentError("unknown stage '" + name + "'");
}

namespace {

bool fraction_dependent(const PlannedStage& s, const std::function<PlannedStage(const std::string&)>& find) {
  if (s.uses_fraction) return true;
  return std::any_of(s.inputs.begin(), s.inputs.end(),
                     [&](const std::string& in) { return fraction_dependent(find(in), find); });
}

}  // namespace

fs::path Runner::checkpoint_path(const PlannedStage& stage, double fraction) const {
  const bool dep = fraction_dependent(stage, [this](const std::string& n) { return find_stage(n); });
  return (dep ? fraction_dir(fraction) : out_ / "shared") / "checkpoints" / (stage.name + ".ckpt");
}

std::string Runner::stage_digest(const PlannedStage& stage, double fraction) {
  const std::string key = stage.name + "@" + fixed(fraction);
  if (auto it = digests_.find(key); it != digests_.end()) return it->second;
  nlohmann::json j;
  j["stage"] = stage.name;
  j["action"] = stage_of_action(stage.action);
  j["seed"] = config_.seed;
  j["corpus"] = config_.corpus;
  if (stage.uses_fraction) j["fraction"] = fixed(fraction);
  const StageConfigs& s = config_.stages;
  switch (stage.action) {
    case StageAction::pretrain_asr:
      j["model"] = config_.acoustic_model;
      j["train"] = s.asr;
      break;
    case StageAction::pretrain_lm:
      j["model"] = config_.text_model;
      j["train"] = s.lm;
      j["lm_noise"] = config_.lm_noise;
      break;
    case StageAction::finetune_ssum: j["train"] = s.ssum; break;
    case StageAction::finetune_tsum: j["train"] = s.tsum; break;
    case StageAction::finetune_augment:
      j["train"] = s.augment;
      j["external_text"] = config_.external_text;
      j["synthetic_voice"] = config_.synthetic_voice;
      break;
    case StageAction::transplant: break;
    case StageAction::finetune_transfer: j["train"] = s.transfer; break;
  }
  nlohmann::json inputs = nlohmann::json::array();
  for (const std::string& in : stage.inputs) inputs.push_back(stage_digest(find_stage(in), fraction));
  j["inputs"] = inputs;
  const std::string digest = to_hex(fnv64(j.dump()));
  digests_[key] = digest;
  return digest;
}

data::PairedDataset Runner::training_set(const PlannedStage& stage, double fraction) {
  const data::Corpus& c = corpus();
  const std::uint64_t subset_seed = derive_seed(config_.seed, fnv64("subset"));
  switch (stage.action) {
    case StageAction::pretrain_asr: return data::view(c.train, data::ViewKind::asr);
    case StageAction::pretrain_lm: return data::view(c.train, data::ViewKind::lm, config_.lm_noise);
    case StageAction::finetune_tsum:
      return data::subset(data::view(c.train, data::ViewKind::tsum), fraction, subset_seed);
    case StageAction::finetune_augment: {
      const auto external = data::generate_external_text(c.lexicon, config_.external_text);
      return data::merge(data::subset(data::view(c.train, data::ViewKind::ssum), fraction, subset_seed),
                         data::synth_augment(external, c.lexicon, c.config.frames_per_word,
                                             config_.synthetic_voice));
    }
    case StageAction::finetune_ssum:
    case StageAction::finetune_transfer:
    case StageAction::transplant:
      return data::subset(data::view(c.train, data::ViewKind::ssum), fraction, subset_seed);
  }
  throw ArgumentError("no training set for stage '" + stage.name + "'");
}

void Runner::train(const PlannedStage& stage, double fraction, const std::vector<StageArtifact>& inputs,
                   const fs::path& dest, const std::string& digest) {
  const data::Corpus& c = corpus();
  const std::uint64_t init_seed = derive_seed(config_.seed, fnv64("init:" + stage.name));
  transfer::Checkpoint out{model::Seq2SeqModel::zeros(config_.acoustic_model, c.vocabulary()),
                           provenance_of(stage.action), ""};

  if (stage.action == StageAction::transplant) {
    const transfer::Checkpoint enc = transfer::load_checkpoint(inputs.at(0).checkpoint);
    const transfer::Checkpoint dec = transfer::load_checkpoint(inputs.at(1).checkpoint);
    out.model = transfer::transplant(enc, dec);
    out.log_digest = to_hex(fnv64(enc.log_digest + "+" + dec.log_digest));
    transfer::save_checkpoint(out, dest);
    return;
  }

  const training::TrainConfig* tc = nullptr;
  data::ViewKind validation_view = data::ViewKind::ssum;
  std::optional<model::Seq2SeqModel> init;
  switch (stage.action) {
    case StageAction::pretrain_asr:
      tc = &config_.stages.asr;
      validation_view = data::ViewKind::asr;
      init.emplace(config_.acoustic_model, c.vocabulary(), init_seed);
      break;
    case StageAction::pretrain_lm:
      tc = &config_.stages.lm;
      validation_view = data::ViewKind::lm;
      init.emplace(config_.text_model, c.vocabulary(), init_seed);
      break;
    case StageAction::finetune_tsum:
      tc = &config_.stages.tsum;
      validation_view = data::ViewKind::tsum;
      break;
    case StageAction::finetune_ssum: tc = &config_.stages.ssum; break;
    case StageAction::finetune_augment: tc = &config_.stages.augment; break;
    case StageAction::finetune_transfer: tc = &config_.stages.transfer; break;
    case StageAction::transplant: break;
  }
  if (!init) init.emplace(transfer::load_checkpoint(inputs.at(0).checkpoint).model);

  training::TrainConfig train_config = *tc;
  train_config.seed = derive_seed(config_.seed, fnv64("train:" + stage.name));
  const data::PairedDataset train_set = training_set(stage, fraction);
  const data::PairedDataset validation = data::view(c.validation, validation_view, config_.lm_noise);
  say("stage " + stage.name + ": " + std::to_string(train_set.size()) + " training examples, " +
      std::to_string(train_config.max_epochs) + " epochs");
  training::TrainHooks hooks;
  hooks.on_epoch = [&](const training::EpochRecord& r) {
    say("  " + stage.name + " epoch " + std::to_string(r.epoch) + " lr " + fixed(r.lr, 6) + " train " +
        fixed(r.train_loss, 4) + " valid " + fixed(r.validation_loss, 4) + " acc " +
        fixed(100.0 * r.validation_accuracy, 2));
  };
  training::TrainResult result = training::train_stage(*init, train_set, validation, train_config, hooks);
  fs::path log_path = dest;
  log_path += ".log.tsv";
  write_text(log_path, result.log.to_tsv());
  out.model = std::move(result.model);
  out.log_digest = result.log.digest();
  transfer::save_checkpoint(out, dest);
  (void)digest;
}

StageArtifact Runner::run_stage(const std::string& name, double fraction, bool build_inputs) {
  const PlannedStage stage = find_stage(name);
  const fs::path dest = checkpoint_path(stage, fraction);
  const std::string digest = stage_digest(stage, fraction);
  fs::path digest_path = dest;
  digest_path += ".digest";
  if (fs::exists(dest) && fs::exists(digest_path) && read_text(digest_path) == digest + "\n") {
    say("stage " + name + ": reusing " + dest.string());
    return {name, dest, digest, true};
  }
  std::vector<StageArtifact> inputs;
  for (const std::string& in : stage.inputs) {
    const PlannedStage dep = find_stage(in);
    const fs::path dep_path = checkpoint_path(dep, fraction);
    fs::path dep_digest = dep_path;
    dep_digest += ".digest";
    const bool present = fs::exists(dep_path) && fs::exists(dep_digest) &&
                         read_text(dep_digest) == stage_digest(dep, fraction) + "\n";
    if (present) {
      inputs.push_back({in, dep_path, stage_digest(dep, fraction), true});
    } else if (build_inputs) {
      inputs.push_back(run_stage(in, fraction, true));
    } else {
      throw StageFailure("stage '" + name + "' needs checkpoint '" + in + "' (" + dep_path.string() +
                         "), which is missing or stale; run that stage first");
    }
  }
  fs::path log_path = dest;
  log_path += ".log.tsv";
  try {
    train(stage, fraction, inputs, dest, digest);
  } catch (const Error& e) {
    throw StageFailure("stage '" + name + "' failed: " + e.what() + " (log: " + log_path.string() + ")");
  }
  write_text(digest_path, digest + "\n");
  return {name, dest, digest, false};
}

SystemResult Runner::decode_system(SystemId system, double fraction) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentPlan plan = make_plan(system, fraction, out_, config_.seed);
  const data::Corpus& c = corpus();
  SystemResult r;
  r.system = system;
  std::vector<transfer::Checkpoint> models;
  std::string chain;
  for (const std::string& name : plan.evaluated) {
    const PlannedStage stage = find_stage(name);
    const fs::path path = checkpoint_path(stage, fraction);
    if (!fs::exists(path)) {
      throw StageFailure(std::string(to_string(system)) + ": checkpoint '" + name + "' (" + path.string() +
                         ") is missing");
    }
    models.push_back(transfer::load_checkpoint(path));
    chain += stage_digest(stage, fraction) + ";";
  }
  chain += nlohmann::json(config_.beam).dump();
  r.config_digest = to_hex(fnv64(chain));

  std::vector<data::IdText> hyps;
  if (system == SystemId::C1) {
    hyps = decode_cascade(models.at(0).model, models.at(1).model, c.evaluation, config_.beam);
  } else {
    hyps = decode_summaries(models.at(0).model, c.evaluation, config_.beam);
  }
  const fs::path dir = fraction_dir(fraction) / std::string(to_string(system));
  fs::create_directories(dir);
  r.hypotheses = dir / "hypotheses.txt";
  r.references = dir / "references.txt";
  data::write_id_text(r.hypotheses, hyps);
  data::write_id_text(r.references, references(c.evaluation, c.vocabulary()));
  r.scores = metrics::evaluate_files(r.hypotheses, r.references);
  write_text(dir / "scores.kv", r.scores.to_key_values());
  r.ok = true;
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SystemResult Runner::run_system(SystemId system, double fraction) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentPlan plan = make_plan(system, fraction, out_, config_.seed);
  say("system " + std::string(to_string(system)) + " (fraction " + fixed(fraction, 2) + ")");
  for (const PlannedStage& s : plan.stages) run_stage(s.name, fraction, false);
  SystemResult r = decode_system(system, fraction);
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  say("system " + std::string(to_string(system)) + ": ROUGE-1 " + fixed(r.scores.rouge1, 2) + " ROUGE-L " +
      fixed(r.scores.rougeL, 2) + " METEOR " + fixed(r.scores.meteor, 2));
  return r;
}

ResultsTable Runner::run_table(std::span<const SystemId> systems, double fraction) {
  ResultsTable table;
  table.fraction = fraction;
  for (SystemId s : systems) {
    try {
      table.rows.push_back(run_system(s, fraction));
    } catch (const Error& e) {
      SystemResult failed;
      failed.system = s;
      failed.error = e.what();
      say("system " + std::string(to_string(s)) + " failed: " + e.what());
      table.rows.push_back(std::move(failed));
    }
  }
  try {
    const fs::path asr = checkpoint_path(find_stage("asr"), fraction);
    if (fs::exists(asr)) {
      const data::Corpus& c = corpus();
      const auto model = transfer::load_checkpoint(asr).model;
      const auto hyps = decode_transcripts(model, c.evaluation, config_.beam);
      std::vector<metrics::ScoredPair> pairs;
      const auto refs = references(c.evaluation, c.vocabulary(), true);
      for (std::size_t i = 0; i < refs.size(); ++i) pairs.push_back({refs[i].id, hyps[i].text, refs[i].text});
      table.asr_wer = metrics::score(pairs).wer;
    }
  } catch (const Error& e) {
    say(std::string("asr wer: ") + e.what());
  }
  const fs::path dir = fraction_dir(fraction);
  write_text(dir / "results.txt", table.to_text());
  write_text(dir / "results.kv", table.to_key_values());
  return table;
}

std::string ResultsTable::to_text() const {
  std::ostringstream out;
  out << "fraction " << fixed(fraction, 2) << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-6s %8s %8s %8s %8s %9s  %s\n", "system", "ROUGE-1", "ROUGE-2", "ROUGE-L",
                "METEOR", "runtime", "config");
  out << buf;
  for (const SystemResult& r : rows) {
    if (r.ok) {
      std::snprintf(buf, sizeof buf, "%-6s %8.2f %8.2f %8.2f %8.2f %8.1fs  %s\n",
                    std::string(to_string(r.system)).c_str(), r.scores.rouge1, r.scores.rouge2, r.scores.rougeL,
                    r.scores.meteor, r.runtime_seconds, r.config_digest.c_str());
    } else {
      std::snprintf(buf, sizeof buf, "%-6s failed: %s\n", std::string(to_string(r.system)).c_str(),
                    r.error.c_str());
    }
    out << buf;
  }
  if (asr_wer) out << "ASR WER " << fixed(*asr_wer, 2) << "\n";
  out << ordering_note();
  return out.str();
}

std::string ResultsTable::to_key_values() const {
  std::ostringstream out;
  out << "fraction=" << fixed(fraction) << "\n";
  if (asr_wer) out << "asr_wer=" << fixed(*asr_wer) << "\n";
  for (const SystemResult& r : rows) {
    const std::string k = "system." + std::string(to_string(r.system)) + ".";
    out << k << "status=" << (r.ok ? "ok" : "failed") << "\n";
    if (!r.ok) continue;
    out << k << "rouge1=" << fixed(r.scores.rouge1) << "\n"
        << k << "rouge2=" << fixed(r.scores.rouge2) << "\n"
        << k << "rougeL=" << fixed(r.scores.rougeL) << "\n"
        << k << "meteor=" << fixed(r.scores.meteor) << "\n"
        << k << "count=" << r.scores.count << "\n"
        << k << "config_digest=" << r.config_digest << "\n";
  }
  return out.str();
}

std::string ResultsTable::ordering_note() const {
  std::vector<const SystemResult*> ok;
  for (const SystemResult& r : rows) {
    if (r.ok) ok.push_back(&r);
  }
  auto reference = [](SystemId s) {
    for (const ReferenceScores& r : full_scale_reference()) {
      if (r.system == s) return r.rougeL;
    }
    return 0.0;
  };
  std::vector<const SystemResult*> sorted = ok;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SystemResult* a, const SystemResult* b) { return a->scores.rougeL > b->scores.rougeL; });
  std::string order;
  for (const SystemResult* r : sorted) order += (order.empty() ? "" : " > ") + std::string(to_string(r->system));
  std::size_t agree = 0, compared = 0;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    for (std::size_t j = i + 1; j < ok.size(); ++j) {
      const double ref = reference(ok[i]->system) - reference(ok[j]->system);
      const double toy = ok[i]->scores.rougeL - ok[j]->scores.rougeL;
      if (ref == 0.0) continue;
      ++compared;
      if ((ref > 0) == (toy > 0) && toy != 0.0) ++agree;
    }
  }
  return "ROUGE-L ordering: " + (order.empty() ? std::string("(none)") : order) +
         "\nagrees with the full-scale reference ordering on " + std::to_string(agree) + " of " +
         std::to_string(compared) + " system pairs (informational)\n";
}

std::string monotonicity_report(const std::vector<ResultsTable>& tables) {
  std::vector<const ResultsTable*> sorted;
  for (const ResultsTable& t : tables) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const ResultsTable* a, const ResultsTable* b) { return a->fraction < b->fraction; });
  std::ostringstream out;
  out << "ROUGE-L by training fraction (informational)\n";
  for (SystemId s : all_systems()) {
    std::string line;
    bool seen = false, monotone = true;
    double prev = -1.0;
    for (const ResultsTable* t : sorted) {
      for (const SystemResult& r : t->rows) {
        if (r.system != s) continue;
        seen = true;
        line += " " + fixed(t->fraction, 2) + ":" + (r.ok ? fixed(r.scores.rougeL, 2) : std::string("failed"));
        if (r.ok) {
          if (r.scores.rougeL < prev) monotone = false;
          prev = r.scores.rougeL;
        }
      }
    }
    if (seen) out << to_string(s) << line << "  non-decreasing: " << (monotone ? "yes" : "no") << "\n";
  }
  return out.str();
}

}  // namespace ssum::pipeline
