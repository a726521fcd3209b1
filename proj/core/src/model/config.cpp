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

#include "ssum/model/config.hpp"

#include <string>

#include "../internal/json_io.hpp"
#include "../internal/key_reader.hpp"
#include "ssum/common/error.hpp"

namespace ssum::model {

std::string_view to_string(EncoderKind kind) {
  return kind == EncoderKind::acoustic ? "acoustic" : "text";
}

EncoderKind encoder_kind_from_string(std::string_view text) {
  if (text == "acoustic") return EncoderKind::acoustic;
  if (text == "text") return EncoderKind::text;
  throw ArgumentError("unknown encoder kind '" + std::string(text) + "'");
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ArgumentError("invalid model config: " + what);
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void ModelConfig::validate() const {
  require(vocab_size >= 4, "vocab_size must cover <pad>, <sos>, <eos>, <mask>");
  require(encoder_dim > 0 && decoder_dim > 0, "model dims must be positive");
  require(encoder_heads > 0 && encoder_dim % encoder_heads == 0,
          "encoder_dim must be divisible by encoder_heads");
  require(decoder_heads > 0 && decoder_dim % decoder_heads == 0,
          "decoder_dim must be divisible by decoder_heads");
  require(encoder_ff_dim > 0 && decoder_ff_dim > 0, "feed-forward dims must be positive");
  require(max_decode_len >= 1, "max_decode_len must be at least 1");
  require(label_smoothing >= 0.0 && label_smoothing < 1.0, "label_smoothing must lie in [0, 1)");
  if (encoder_kind == EncoderKind::acoustic) {
    require(feature_dim >= 1, "feature_dim must be positive");
    require(subsample_rate >= 1 && is_power_of_two(subsample_rate),
            "subsample_rate must be a power of two (stride-2 convolutions)");
    std::size_t halvings = 0;
    for (std::size_t r = subsample_rate; r > 1; r /= 2) ++halvings;
    require(subsample_layers >= halvings, "subsample_layers too few for subsample_rate");
    require(subsample_layers >= 1 && subsample_channels >= 1, "need at least one sub-sampling conv");
    require(conv_kernel % 2 == 1, "conv_kernel must be odd");
  } else {
    require(max_source_len >= 1, "max_source_len must be positive");
  }
}

std::string ModelConfig::to_json() const {
  nlohmann::json j = *this;
  return j.dump(2);
}

ModelConfig ModelConfig::from_json(std::string_view text) {
  ModelConfig c;
  try {
    nlohmann::json::parse(text).get_to(c);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("model config: ") + e.what());
  }
  c.validate();
  return c;
}

ModelConfig ModelConfig::toy_acoustic(std::size_t vocab_size) {
  ModelConfig c;
  c.vocab_size = vocab_size;
  return c;
}

ModelConfig ModelConfig::toy_text(std::size_t vocab_size) {
  ModelConfig c;
  c.encoder_kind = EncoderKind::text;
  c.vocab_size = vocab_size;
  return c;
}

ModelConfig ModelConfig::full_scale_acoustic() {
  ModelConfig c;
  c.encoder_kind = EncoderKind::acoustic;
  c.feature_dim = 43;  // 40 log Mel-filterbank + 3 pitch
  c.subsample_rate = 4;
  c.subsample_layers = 4;
  c.subsample_channels = 768;
  c.conv_kernel = 31;
  c.relative_clip = 160;
  c.encoder_layers = 12;
  c.encoder_dim = 768;
  c.encoder_heads = 8;
  c.encoder_ff_dim = 2048;
  c.decoder_layers = 6;
  c.decoder_dim = 768;
  c.decoder_heads = 12;
  c.decoder_ff_dim = 3072;
  c.vocab_size = 50265;
  c.max_decode_len = 1024;
  return c;
}

ModelConfig ModelConfig::full_scale_text() {
  ModelConfig c = full_scale_acoustic();
  c.encoder_kind = EncoderKind::text;
  c.encoder_layers = 6;
  c.encoder_heads = 12;
  c.encoder_ff_dim = 3072;
  c.max_source_len = 1024;
  return c;
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json{
      {"encoder_kind", std::string(to_string(c.encoder_kind))},
      {"feature_dim", c.feature_dim},
      {"subsample_rate", c.subsample_rate},
      {"subsample_layers", c.subsample_layers},
      {"subsample_channels", c.subsample_channels},
      {"conv_kernel", c.conv_kernel},
      {"relative_clip", c.relative_clip},
      {"max_source_len", c.max_source_len},
      {"encoder_layers", c.encoder_layers},
      {"encoder_dim", c.encoder_dim},
      {"encoder_heads", c.encoder_heads},
      {"encoder_ff_dim", c.encoder_ff_dim},
      {"decoder_layers", c.decoder_layers},
      {"decoder_dim", c.decoder_dim},
      {"decoder_heads", c.decoder_heads},
      {"decoder_ff_dim", c.decoder_ff_dim},
      {"vocab_size", c.vocab_size},
      {"max_decode_len", c.max_decode_len},
      {"label_smoothing", c.label_smoothing},
  };
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  std::string kind(to_string(c.encoder_kind));
  internal::KeyReader r(j, "model");
  r.get("encoder_kind", kind)
      .get("feature_dim", c.feature_dim)
      .get("subsample_rate", c.subsample_rate)
      .get("subsample_layers", c.subsample_layers)
      .get("subsample_channels", c.subsample_channels)
      .get("conv_kernel", c.conv_kernel)
      .get("relative_clip", c.relative_clip)
      .get("max_source_len", c.max_source_len)
      .get("encoder_layers", c.encoder_layers)
      .get("encoder_dim", c.encoder_dim)
      .get("encoder_heads", c.encoder_heads)
      .get("encoder_ff_dim", c.encoder_ff_dim)
      .get("decoder_layers", c.decoder_layers)
      .get("decoder_dim", c.decoder_dim)
      .get("decoder_heads", c.decoder_heads)
      .get("decoder_ff_dim", c.decoder_ff_dim)
      .get("vocab_size", c.vocab_size)
      .get("max_decode_len", c.max_decode_len)
      .get("label_smoothing", c.label_smoothing);
  r.finish();
  c.encoder_kind = encoder_kind_from_string(kind);
}

}  // namespace ssum::model
