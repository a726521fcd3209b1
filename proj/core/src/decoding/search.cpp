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

#include "ssum/decoding/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssum/common/error.hpp"

namespace ssum::decoding {

using model::Vocabulary;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool better_final(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
  return a.tokens < b.tokens;
}

}  // namespace

ModelScorer::ModelScorer(const model::Seq2SeqModel& model, const model::Source& source)
    : model_(model), memory_(model.encode(source)) {}

std::vector<double> ModelScorer::log_probs(std::span<const int> prefix) const {
  return model_.decode_step_log_probs(prefix, memory_);
}

std::vector<int> Hypothesis::output() const {
  std::vector<int> out;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (finished && i + 1 == tokens.size()) break;
    out.push_back(tokens[i]);
  }
  return out;
}

void BeamConfig::validate() const {
  if (width == 0) throw ArgumentError("beam width must be at least 1");
  if (max_length == 0) throw ArgumentError("max_length must be at least 1");
  if (!std::isfinite(length_penalty)) throw ArgumentError("length_penalty must be finite");
}

bool emittable(int token) noexcept {
  return token != Vocabulary::kPad && token != Vocabulary::kSos && token != Vocabulary::kMask;
}

std::vector<int> greedy_decode(const TokenScorer& scorer, std::size_t max_length) {
  std::vector<int> prefix{Vocabulary::kSos};
  while (prefix.size() - 1 < max_length) {
    const std::vector<double> lp = scorer.log_probs(prefix);
    int best = -1;
    for (std::size_t t = 0; t < lp.size(); ++t) {
      if (!emittable(static_cast<int>(t))) continue;
      if (best < 0 || lp[t] > lp[static_cast<std::size_t>(best)]) best = static_cast<int>(t);
    }
    if (best < 0 || best == Vocabulary::kEos) break;
    prefix.push_back(best);
  }
  return {prefix.begin() + 1, prefix.end()};
}

double score_bound(const Hypothesis& h, const BeamConfig& config) {
  const double emitted = static_cast<double>(h.emitted());
  if (config.length_penalty >= 0.0) {
    // Every further token adds at most the reward.
    return h.log_prob + config.length_penalty * static_cast<double>(config.max_length);
  }
  // Any final hypothesis needs at least one more token.
  return h.log_prob + config.length_penalty * (emitted + 1.0);
}

bool detect_end(std::span<const Hypothesis> active, std::span<const Hypothesis> finished,
                const BeamConfig& config) {
  if (active.empty()) return true;
  if (!config.end_detection || finished.empty()) return false;
  double best = kNegInf;
  for (const Hypothesis& h : finished) best = std::max(best, h.score);
  return std::all_of(active.begin(), active.end(),
                     [&](const Hypothesis& h) { return best >= score_bound(h, config); });
}

std::vector<Hypothesis> beam_search(const TokenScorer& scorer, const BeamConfig& config) {
  config.validate();
  struct Candidate {
    double log_prob;
    std::size_t parent;
    int token;
  };
  const double alpha = config.length_penalty;
  std::vector<Hypothesis> active{Hypothesis{{Vocabulary::kSos}, 0.0, false, 0.0}};
  std::vector<Hypothesis> done;
  for (std::size_t step = 1; step <= config.max_length; ++step) {
    if (detect_end(active, done, config)) {
      // The survivors cannot overtake the best finished hypothesis.
      active.clear();
      break;
    }
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < active.size(); ++p) {
      const std::vector<double> lp = scorer.log_probs(active[p].tokens);
      if (lp.size() != scorer.vocab_size()) throw ShapeError("scorer returned the wrong vocabulary size");
      for (std::size_t t = 0; t < lp.size(); ++t) {
        if (!emittable(static_cast<int>(t)) || lp[t] == kNegInf) continue;
        candidates.push_back({active[p].log_prob + lp[t], p, static_cast<int>(t)});
      }
    }
    // Every candidate has the same length here, so ranking by log_prob is
    // ranking by score.
    const std::size_t keep = std::min(config.width, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                      candidates.end(), [](const Candidate& a, const Candidate& b) {
                        if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
                        if (a.token != b.token) return a.token < b.token;
                        return a.parent < b.parent;
                      });
    std::vector<Hypothesis> next;
    for (std::size_t i = 0; i < keep; ++i) {
      const Candidate& c = candidates[i];
      Hypothesis h{active[c.parent].tokens, c.log_prob, c.token == Vocabulary::kEos, 0.0};
      h.tokens.push_back(c.token);
      h.score = h.log_prob + alpha * static_cast<double>(h.emitted());
      (h.finished ? done : next).push_back(std::move(h));
    }
    active = std::move(next);
  }
  // Whatever is still active hit the length cap.
  for (Hypothesis& h : active) done.push_back(std::move(h));
  std::sort(done.begin(), done.end(), better_final);
  return done;
}

std::vector<int> greedy_decode(const model::Seq2SeqModel& model, const model::Source& source,
                               std::size_t max_length) {
  return greedy_decode(ModelScorer(model, source), max_length);
}

std::vector<Hypothesis> beam_search(const model::Seq2SeqModel& model, const model::Source& source,
                                    const BeamConfig& config) {
  return beam_search(ModelScorer(model, source), config);
}

}  // namespace ssum::decoding
