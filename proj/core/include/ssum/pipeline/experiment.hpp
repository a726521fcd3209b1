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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ssum/data/corpus.hpp"
#include "ssum/decoding/search.hpp"
#include "ssum/model/config.hpp"
#include "ssum/training/trainer.hpp"

namespace ssum::pipeline {

/// The six systems of the comparison table.
enum class SystemId { C1, B1, B2, P1, P2, P3 };

std::string_view to_string(SystemId id);
SystemId system_from_string(std::string_view text);
const std::vector<SystemId>& all_systems();

struct StageConfigs {
  training::TrainConfig asr;
  training::TrainConfig lm;
  training::TrainConfig ssum;
  training::TrainConfig tsum;
  /// Fine-tuning on real plus synthetic-voice data.
  training::TrainConfig augment;
  training::TrainConfig transfer;
};

/// Everything a table run depends on. Stage seeds are derived from `seed`
/// and the stage name; the seed fields inside stage configs are ignored.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  data::CorpusConfig corpus;
  data::LmNoiseConfig lm_noise;
  data::ExternalTextConfig external_text;
  data::SyntheticVoiceConfig synthetic_voice;
  model::ModelConfig acoustic_model;
  model::ModelConfig text_model;
  StageConfigs stages;
  decoding::BeamConfig beam;

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Desk-scale defaults: the 2,000-triplet corpus and toy models.
  static ExperimentConfig toy();
  /// A much smaller corpus and fewer epochs for quick end-to-end checks.
  static ExperimentConfig smoke();
};

/// What a stage does.
enum class StageAction {
  pretrain_asr,
  pretrain_lm,
  finetune_ssum,
  finetune_tsum,
  finetune_augment,
  transplant,
  finetune_transfer,
};

struct PlannedStage {
  /// Unique within a plan; also the artifact name.
  std::string name;
  StageAction action;
  /// Stages whose checkpoints initialize this one, in (encoder, decoder)
  /// order for transplants.
  std::vector<std::string> inputs;
  /// True when the stage trains on the fraction-dependent subset.
  bool uses_fraction = false;
};

struct ExperimentPlan {
  SystemId system = SystemId::B1;
  std::vector<PlannedStage> stages;
  double fraction = 1.0;
  std::filesystem::path out;
  std::uint64_t seed = 1;
  /// Stages whose checkpoints are evaluated: one, or (asr, tsum) for the
  /// cascade.
  std::vector<std::string> evaluated;
};

/// Ordered stage list of a system. Throws ArgumentError for fractions
/// outside (0, 1].
ExperimentPlan make_plan(SystemId system, double fraction, const std::filesystem::path& out,
                         std::uint64_t seed);

/// Throws ArgumentError unless every stage's inputs appear earlier and
/// names are unique.
void validate_plan(const ExperimentPlan& plan);

std::string_view to_string(StageAction action);

}  // namespace ssum::pipeline
