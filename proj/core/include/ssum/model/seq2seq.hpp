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
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ssum/compute/ops.hpp"
#include "ssum/model/config.hpp"
#include "ssum/model/parameters.hpp"
#include "ssum/model/vocabulary.hpp"

namespace ssum::model {

/// Encoder input: acoustic frames (T x feature_dim) or source token ids.
using Source = std::variant<Tensor, std::vector<int>>;

struct ParameterSpec {
  std::string name;
  Shape shape;
};

/// Every parameter a config implies, in construction order.
std::vector<ParameterSpec> parameter_layout(const ModelConfig& config);
std::size_t parameter_count(const ModelConfig& config);

namespace detail {
struct Architecture;
}

/// Encoder-decoder network.
///
/// The acoustic encoder is a stack of stride-2 Conv2d sub-sampling layers
/// followed by Conformer blocks whose self-attention uses a learned table of
/// clipped relative-position embeddings. The text encoder swaps the front
/// end for a token embedding plus learned absolute positions and uses plain
/// pre-norm Transformer blocks. Both feed the same decoder: token embedding
/// plus learned positions, causal self-attention, source-target attention,
/// GELU feed-forward, and an untied output projection.
///
/// A model is immutable while it is only read; training mutates
/// parameters() and must have exclusive access.
class Seq2SeqModel {
 public:
  /// Xavier-uniform matrices, zero biases, unit norm gains.
  Seq2SeqModel(ModelConfig config, Vocabulary vocabulary, std::uint64_t seed);

  /// Same architecture with every value zero; callers fill parameters().
  static Seq2SeqModel zeros(ModelConfig config, Vocabulary vocabulary);

  const ModelConfig& config() const noexcept { return config_; }
  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  ParameterSet& parameters() noexcept { return params_; }
  const ParameterSet& parameters() const noexcept { return params_; }

  /// Encoder pass on a tape. Output is ceil(T / r) x encoder_dim for
  /// acoustic input, L x encoder_dim for tokens.
  compute::Var encode(compute::Tape& tape, const Source& source) const;

  /// Decoder pass over `prefix` (starting with <sos>) attending to `memory`.
  /// Returns prefix.size() x vocab_size logits; row l only depends on
  /// prefix[0..l].
  compute::Var decode_logits(compute::Tape& tape, compute::Var memory,
                             std::span<const int> prefix) const;

  /// Evaluation-only helpers (no gradient recording).
  Tensor encode(const Source& source) const;
  /// Next-token distribution after `prefix`.
  std::vector<double> decode_step(std::span<const int> prefix, const Tensor& memory) const;
  /// Natural-log next-token probabilities after `prefix`.
  std::vector<double> decode_step_log_probs(std::span<const int> prefix, const Tensor& memory) const;
  /// Distributions for every target position, conditioning step l on the
  /// ground-truth targets[0..l-1]. Targets must end with <eos>.
  Tensor forward_teacher_forced(const Source& source, std::span<const int> targets) const;

  /// Encoder output length for `frames` acoustic frames.
  std::size_t encoded_length(std::size_t frames) const;

 private:
  Seq2SeqModel(ModelConfig config, Vocabulary vocabulary, std::uint64_t seed, bool initialise);

  ModelConfig config_;
  Vocabulary vocabulary_;
  ParameterSet params_;
  std::shared_ptr<const detail::Architecture> arch_;
};

/// <sos> followed by all but the last target: the decoder input under
/// teacher forcing.
std::vector<int> teacher_forcing_input(std::span<const int> targets);

}  // namespace ssum::model
