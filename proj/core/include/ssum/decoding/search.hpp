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
#include <span>
#include <vector>

#include "ssum/model/seq2seq.hpp"

namespace ssum::decoding {

/// Next-token log-probabilities given a prefix that starts with <sos>.
class TokenScorer {
 public:
  virtual ~TokenScorer() = default;
  virtual std::size_t vocab_size() const = 0;
  virtual std::vector<double> log_probs(std::span<const int> prefix) const = 0;
};

/// Scores with a model against one encoded source.
class ModelScorer final : public TokenScorer {
 public:
  ModelScorer(const model::Seq2SeqModel& model, const model::Source& source);
  std::size_t vocab_size() const override { return model_.config().vocab_size; }
  std::vector<double> log_probs(std::span<const int> prefix) const override;

 private:
  const model::Seq2SeqModel& model_;
  compute::Tensor memory_;
};

struct Hypothesis {
  /// Starts with <sos>; ends with <eos> iff finished.
  std::vector<int> tokens;
  double log_prob = 0.0;
  /// False for hypotheses cut off at the length limit.
  bool finished = false;
  /// log_prob + length_penalty * (tokens.size() - 1).
  double score = 0.0;

  /// Tokens without <sos> and the final <eos>.
  std::vector<int> output() const;
  std::size_t emitted() const noexcept { return tokens.empty() ? 0 : tokens.size() - 1; }
};

struct BeamConfig {
  std::size_t width = 8;
  /// Additive reward per emitted token, <eos> included.
  double length_penalty = 0.3;
  /// Maximum emitted tokens, <eos> included.
  std::size_t max_length = 64;
  /// Stop as soon as no active hypothesis can overtake the best finished one.
  bool end_detection = true;

  void validate() const;
  friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

/// Tokens the decoder may emit: everything except <pad>, <sos> and <mask>.
bool emittable(int token) noexcept;

/// Argmax decoding (lowest id on ties) until <eos> or max_length emitted
/// tokens. Output excludes <sos> and <eos>.
std::vector<int> greedy_decode(const TokenScorer& scorer, std::size_t max_length);

/// Upper bound on the final score any extension of `h` can reach.
double score_bound(const Hypothesis& h, const BeamConfig& config);

/// True when decoding may stop: nothing is active, or end detection is on
/// and the best finished score is at least every active hypothesis' bound.
bool detect_end(std::span<const Hypothesis> active, std::span<const Hypothesis> finished,
                const BeamConfig& config);

/// Beam search with an additive length reward. Each step expands every
/// active hypothesis by every emittable token and keeps the best `width`
/// candidates; those ending in <eos> leave the beam. Candidates are ranked
/// by score, then lower last token, then lower parent rank. Returns
/// finished and length-capped hypotheses sorted by score (descending),
/// ties by shorter length then lexicographic tokens.
std::vector<Hypothesis> beam_search(const TokenScorer& scorer, const BeamConfig& config);

/// Convenience wrappers over ModelScorer.
std::vector<int> greedy_decode(const model::Seq2SeqModel& model, const model::Source& source,
                               std::size_t max_length);
std::vector<Hypothesis> beam_search(const model::Seq2SeqModel& model, const model::Source& source,
                                    const BeamConfig& config);

}  // namespace ssum::decoding
