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

#include <cstddef>
#include <string>
#include <string_view>

namespace ssum::model {

/// Which front end feeds the shared decoder.
enum class EncoderKind {
  /// Convolutional sub-sampling followed by Conformer blocks over acoustic
  /// feature frames (ASR and speech summarization models).
  acoustic,
  /// Token embedding plus Transformer blocks over text (denoising LM and
  /// text summarization models).
  text,
};

std::string_view to_string(EncoderKind kind);
EncoderKind encoder_kind_from_string(std::string_view text);

struct ModelConfig {
  EncoderKind encoder_kind = EncoderKind::acoustic;

  // Acoustic front end.
  std::size_t feature_dim = 16;
  std::size_t subsample_rate = 4;
  std::size_t subsample_layers = 2;
  std::size_t subsample_channels = 8;
  std::size_t conv_kernel = 7;
  std::size_t relative_clip = 64;

  // Text front end.
  std::size_t max_source_len = 64;

  std::size_t encoder_layers = 2;
  std::size_t encoder_dim = 32;
  std::size_t encoder_heads = 4;
  std::size_t encoder_ff_dim = 64;

  std::size_t decoder_layers = 2;
  std::size_t decoder_dim = 32;
  std::size_t decoder_heads = 4;
  std::size_t decoder_ff_dim = 64;

  std::size_t vocab_size = 64;
  std::size_t max_decode_len = 64;
  double label_smoothing = 0.1;

  /// Throws ArgumentError describing the first violated constraint.
  void validate() const;

  std::string to_json() const;
  static ModelConfig from_json(std::string_view text);

  /// Desk-scale speech model.
  static ModelConfig toy_acoustic(std::size_t vocab_size);
  /// Desk-scale text model sharing the toy decoder shape.
  static ModelConfig toy_text(std::size_t vocab_size);
  /// Published speech model dimensions (documentation; far too large to
  /// train here). Vocabulary is the 50,265-entry BPE inventory.
  static ModelConfig full_scale_acoustic();
  static ModelConfig full_scale_text();

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

}  // namespace ssum::model
