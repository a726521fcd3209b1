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

// nlohmann/json adapters for the library's configuration types. Internal:
// the public headers only expose string-based (de)serialisation.

#include "json.hpp"
#include "ssum/data/corpus.hpp"
#include "ssum/decoding/search.hpp"
#include "ssum/model/config.hpp"
#include "ssum/training/trainer.hpp"

namespace ssum::model {
void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);
}  // namespace ssum::model

namespace ssum::training {
void to_json(nlohmann::json& j, const AdamConfig& c);
void from_json(const nlohmann::json& j, AdamConfig& c);
void to_json(nlohmann::json& j, const SpecAugmentConfig& c);
void from_json(const nlohmann::json& j, SpecAugmentConfig& c);
void to_json(nlohmann::json& j, const SchedulerConfig& c);
void from_json(const nlohmann::json& j, SchedulerConfig& c);
void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);
}  // namespace ssum::training

namespace ssum::data {
void to_json(nlohmann::json& j, const CorpusConfig& c);
void from_json(const nlohmann::json& j, CorpusConfig& c);
void to_json(nlohmann::json& j, const LmNoiseConfig& c);
void from_json(const nlohmann::json& j, LmNoiseConfig& c);
void to_json(nlohmann::json& j, const ExternalTextConfig& c);
void from_json(const nlohmann::json& j, ExternalTextConfig& c);
void to_json(nlohmann::json& j, const SyntheticVoiceConfig& c);
void from_json(const nlohmann::json& j, SyntheticVoiceConfig& c);
}  // namespace ssum::data

namespace ssum::decoding {
void to_json(nlohmann::json& j, const BeamConfig& c);
void from_json(const nlohmann::json& j, BeamConfig& c);
}  // namespace ssum::decoding
