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

#include "ssum/pipeline/experiment.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "../internal/json_io.hpp"
#include "../internal/key_reader.hpp"
#include "ssum/common/error.hpp"

namespace ssum::pipeline {

std::string_view to_string(SystemId id) {
  switch (id) {
    case SystemId::C1: return "C-1";
    case SystemId::B1: return "B-1";
    case SystemId::B2: return "B-2";
    case SystemId::P1: return "P-1";
    case SystemId::P2: return "P-2";
    case SystemId::P3: return "P-3";
  }
  return "unknown";
}

SystemId system_from_string(std::string_view text) {
  for (SystemId s : all_systems()) {
    if (to_string(s) == text) return s;
  }
  throw ArgumentError("unknown system '" + std::string(text) + "' (expected C-1, B-1, B-2, P-1, P-2 or P-3)");
}

const std::vector<SystemId>& all_systems() {
  static const std::vector<SystemId> systems = {SystemId::C1, SystemId::B1, SystemId::B2,
                                                SystemId::P1, SystemId::P2, SystemId::P3};
  return systems;
}

std::string_view to_string(StageAction action) {
  switch (action) {
    case StageAction::pretrain_asr: return "pretrain-asr";
    case StageAction::pretrain_lm: return "pretrain-lm";
    case StageAction::finetune_ssum: return "finetune-ssum";
    case StageAction::finetune_tsum: return "finetune-tsum";
    case StageAction::finetune_augment: return "finetune-augment";
    case StageAction::transplant: return "transplant";
    case StageAction::finetune_transfer: return "finetune-transfer";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  corpus.validate();
  acoustic_model.validate();
  text_model.validate();
  beam.validate();
  const std::size_t vocab = corpus.vocab_words + model::Vocabulary::kReserved;
  if (acoustic_model.vocab_size != vocab || text_model.vocab_size != vocab) {
    throw ArgumentError("model vocab_size must equal the corpus vocabulary (" + std::to_string(vocab) + ")");
  }
  if (acoustic_model.encoder_kind != model::EncoderKind::acoustic) {
    throw ArgumentError("acoustic_model must use the acoustic encoder");
  }
  if (text_model.encoder_kind != model::EncoderKind::text) {
    throw ArgumentError("text_model must use the text encoder");
  }
  if (acoustic_model.feature_dim != corpus.feature_dim) {
    throw ArgumentError("acoustic_model.feature_dim must equal corpus.feature_dim");
  }
  if (corpus.max_frames < acoustic_model.subsample_rate) {
    throw ArgumentError("corpus.max_frames is shorter than the sub-sampling rate");
  }
  if (text_model.max_source_len < corpus.max_words) {
    throw ArgumentError("text_model.max_source_len must hold the longest transcription");
  }
  for (const training::TrainConfig* t : {&stages.asr, &stages.lm, &stages.ssum, &stages.tsum,
                                         &stages.augment, &stages.transfer}) {
    t->validate();
  }
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j = {
      {"seed", seed},
      {"corpus", corpus},
      {"lm_noise", lm_noise},
      {"external_text", external_text},
      {"synthetic_voice", synthetic_voice},
      {"acoustic_model", acoustic_model},
      {"text_model", text_model},
      {"stages",
       {{"asr", stages.asr},
        {"lm", stages.lm},
        {"ssum", stages.ssum},
        {"tsum", stages.tsum},
        {"augment", stages.augment},
        {"transfer", stages.transfer}}},
      {"beam", beam},
  };
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
  // Missing keys keep the toy defaults.
  ExperimentConfig c = toy();
  try {
    const auto j = nlohmann::json::parse(text);
    nlohmann::json stages = nlohmann::json::object();
    internal::KeyReader(j, "experiment")
        .get("seed", c.seed)
        .get("corpus", c.corpus)
        .get("lm_noise", c.lm_noise)
        .get("external_text", c.external_text)
        .get("synthetic_voice", c.synthetic_voice)
        .get("acoustic_model", c.acoustic_model)
        .get("text_model", c.text_model)
        .get("beam", c.beam)
        .get("stages", stages)
        .finish();
    {
      internal::KeyReader(stages, "experiment.stages")
          .get("asr", c.stages.asr)
          .get("lm", c.stages.lm)
          .get("ssum", c.stages.ssum)
          .get("tsum", c.stages.tsum)
          .get("augment", c.stages.augment)
          .get("transfer", c.stages.transfer)
          .finish();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return from_json(s.str());
}

namespace {

training::TrainConfig stage(training::StageKind kind, std::size_t batch, std::size_t epochs,
                            training::SchedulerConfig sched, bool augment) {
  training::TrainConfig t;
  t.stage = kind;
  t.batch_size = batch;
  t.max_epochs = epochs;
  t.scheduler = sched;
  t.use_spec_augment = augment;
  return t;
}

training::SchedulerConfig noam(double peak, std::size_t warmup) {
  training::SchedulerConfig s;
  s.kind = training::SchedulerKind::noam;
  s.lr = peak;
  s.warmup_steps = warmup;
  return s;
}

training::SchedulerConfig plateau(double start) {
  training::SchedulerConfig s;
  s.kind = training::SchedulerKind::plateau;
  s.lr = start;
  return s;
}

training::SchedulerConfig linear(double start, std::size_t epochs) {
  training::SchedulerConfig s;
  s.kind = training::SchedulerKind::linear;
  s.lr = start;
  s.decay_epochs = epochs;
  return s;
}

}  // namespace

ExperimentConfig ExperimentConfig::toy() {
  using training::StageKind;
  ExperimentConfig c;
  const std::size_t vocab = c.corpus.vocab_words + model::Vocabulary::kReserved;
  c.acoustic_model = model::ModelConfig::toy_acoustic(vocab);
  c.text_model = model::ModelConfig::toy_text(vocab);
  c.stages.asr = stage(StageKind::asr_pretrain, 16, 20, noam(5e-3, 500), true);
  c.stages.lm = stage(StageKind::lm_pretrain, 16, 8, noam(3e-3, 300), false);
  c.stages.ssum = stage(StageKind::ssum_finetune, 16, 8, plateau(1e-3), true);
  c.stages.tsum = stage(StageKind::tsum_finetune, 16, 6, linear(1e-3, 6), false);
  c.stages.augment = stage(StageKind::ssum_finetune, 16, 4, plateau(1e-4), true);
  c.stages.augment.decoder_lr_scale = 10.0;
  c.stages.transfer = stage(StageKind::transfer_finetune, 16, 6, plateau(1e-3), true);
  return c;
}

ExperimentConfig ExperimentConfig::smoke() {
  ExperimentConfig c = toy();
  c.corpus.train_size = 64;
  c.corpus.validation_size = 16;
  c.corpus.evaluation_size = 16;
  c.external_text.size = 32;
  for (training::TrainConfig* t : {&c.stages.asr, &c.stages.lm, &c.stages.ssum, &c.stages.tsum,
                                   &c.stages.augment, &c.stages.transfer}) {
    t->max_epochs = 1;
    t->batch_size = 8;
  }
  c.stages.asr.scheduler.warmup_steps = 8;
  c.stages.lm.scheduler.warmup_steps = 8;
  c.stages.tsum.scheduler.decay_epochs = 1;
  c.beam.width = 2;
  c.beam.max_length = 24;
  return c;
}

ExperimentPlan make_plan(SystemId system, double fraction, const std::filesystem::path& out,
                         std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("fraction must lie in (0, 1]");
  const PlannedStage asr{"asr", StageAction::pretrain_asr, {}, false};
  const PlannedStage lm{"lm", StageAction::pretrain_lm, {}, false};
  const PlannedStage ssum{"ssum", StageAction::finetune_ssum, {"asr"}, true};
  const PlannedStage tsum{"tsum", StageAction::finetune_tsum, {"lm"}, true};
  auto transfer = [](const std::string& tag, const std::string& enc, const std::string& dec) {
    return std::vector<PlannedStage>{
        {"transplant-" + tag, StageAction::transplant, {enc, dec}, false},
        {"transfer-" + tag, StageAction::finetune_transfer, {"transplant-" + tag}, true}};
  };
  ExperimentPlan plan;
  plan.system = system;
  plan.fraction = fraction;
  plan.out = out;
  plan.seed = seed;
  std::vector<PlannedStage> tail;
  switch (system) {
    case SystemId::C1:
      plan.stages = {asr, lm, tsum};
      plan.evaluated = {"asr", "tsum"};
      break;
    case SystemId::B1:
      plan.stages = {asr, ssum};
      plan.evaluated = {"ssum"};
      break;
    case SystemId::B2:
      plan.stages = {asr, ssum, {"augment", StageAction::finetune_augment, {"ssum"}, true}};
      plan.evaluated = {"augment"};
      break;
    case SystemId::P1:
      plan.stages = {asr, ssum, lm, tsum};
      tail = transfer("P-1", "ssum", "tsum");
      break;
    case SystemId::P2:
      plan.stages = {asr, lm, tsum};
      tail = transfer("P-2", "asr", "tsum");
      break;
    case SystemId::P3:
      plan.stages = {asr, ssum, lm};
      tail = transfer("P-3", "ssum", "lm");
      break;
  }
  if (!tail.empty()) {
    plan.evaluated = {tail.back().name};
    plan.stages.insert(plan.stages.end(), tail.begin(), tail.end());
  }
  validate_plan(plan);
  return plan;
}

void validate_plan(const ExperimentPlan& plan) {
  std::set<std::string> done;
  for (const PlannedStage& s : plan.stages) {
    for (const std::string& in : s.inputs) {
      if (!done.count(in)) {
        throw ArgumentError("plan " + std::string(to_string(plan.system)) + ": stage '" + s.name +
                            "' needs '" + in + "' earlier in the plan");
      }
    }
    const bool want_inputs = s.action != StageAction::pretrain_asr && s.action != StageAction::pretrain_lm;
    if (want_inputs == s.inputs.empty()) {
      throw ArgumentError("plan: stage '" + s.name + "' must name its initialization checkpoint(s)");
    }
    if (s.action == StageAction::transplant && s.inputs.size() != 2) {
      throw ArgumentError("plan: transplant stage '" + s.name + "' needs an encoder and a decoder source");
    }
    if (!done.insert(s.name).second) throw ArgumentError("plan: duplicate stage '" + s.name + "'");
  }
  for (const std::string& e : plan.evaluated) {
    if (!done.count(e)) throw ArgumentError("plan: evaluated stage '" + e + "' is not planned");
  }
}

}  // namespace ssum::pipeline
