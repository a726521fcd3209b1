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
#include <filesystem>
#include <string>
#include <vector>

namespace ssum::metrics {

struct SampleScore {
  std::string id;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double meteor = 0.0;
  std::size_t edits = 0;
  std::size_t reference_words = 0;
};

/// All scores are percentages. ROUGE and METEOR average the per-sample
/// scores; WER pools edits over reference words.
struct ScoreReport {
  std::vector<SampleScore> samples;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double meteor = 0.0;
  double wer = 0.0;
  std::size_t count = 0;

  std::string to_table() const;
  /// "key=value" lines with fixed six-decimal formatting.
  std::string to_key_values() const;
};

struct ScoredPair {
  std::string id;
  std::string hypothesis;
  std::string reference;
};

/// Throws ArgumentError if a reference is empty after tokenization.
ScoreReport score(const std::vector<ScoredPair>& pairs);

/// Scores two id<TAB>text files. Every reference id must have exactly one
/// hypothesis and vice versa; rows follow the reference order.
ScoreReport evaluate_files(const std::filesystem::path& hypotheses,
                           const std::filesystem::path& references);

}  // namespace ssum::metrics
