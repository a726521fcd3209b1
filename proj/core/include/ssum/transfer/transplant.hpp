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

#include <filesystem>
#include <map>
#include <optional>
#include <string_view>

#include "ssum/transfer/checkpoint.hpp"

namespace ssum::transfer {

struct CheckpointSource {
  std::filesystem::path path;
  /// Required provenance when TransplantSpec::strict is set.
  std::optional<Provenance> expected;
};

struct TransplantSpec {
  CheckpointSource encoder;
  CheckpointSource decoder;
  /// Enforce the expected provenances.
  bool strict = true;
};

/// Raised when sources cannot be combined; the message names the first
/// offending parameter where there is one.
class TransplantError : public Error {
 public:
  using Error::Error;
};

/// Config of the combined model: the encoder source's front end and
/// encoder, the decoder source's decoder.
model::ModelConfig transplant_config(const model::ModelConfig& encoder_source,
                                     const model::ModelConfig& decoder_source);

/// Fresh model whose encoder.* parameters are copies of the encoder
/// source's and decoder.* parameters copies of the decoder source's. The
/// sources are not modified.
model::Seq2SeqModel transplant(const Checkpoint& encoder_source, const Checkpoint& decoder_source);

/// Loads both sources and checks provenance when strict.
model::Seq2SeqModel transplant(const TransplantSpec& spec);

enum class Variant { P1, P2, P3 };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view text);

/// Published checkpoint path per provenance.
class CheckpointStore {
 public:
  void publish(Provenance p, std::filesystem::path path);
  std::optional<std::filesystem::path> find(Provenance p) const;

 private:
  std::map<Provenance, std::filesystem::path> paths_;
};

/// P1: ssum + tsum, P2: asr + tsum, P3: ssum + lm. Throws TransplantError
/// naming the missing provenance.
TransplantSpec build_variant(Variant variant, const CheckpointStore& store);

}  // namespace ssum::transfer
