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
#include <string>
#include <string_view>
#include <vector>

namespace ssum::metrics {

using Tokens = std::span<const std::string>;

/// Lower-cases ASCII, treats punctuation as whitespace, splits on
/// whitespace.
std::vector<std::string> tokenize_for_scoring(std::string_view text);

/// Precision, recall and F1, in percent.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Clipped n-gram overlap. Zero when either side has no n-grams or
/// nothing overlaps.
Prf rouge_n(Tokens hypothesis, Tokens reference, std::size_t n);

std::size_t lcs_length(Tokens a, Tokens b);
/// LCS / |hyp|, LCS / |ref| and their harmonic mean.
Prf rouge_l(Tokens hypothesis, Tokens reference);

struct Alignment {
  std::size_t matches = 0;
  /// Runs of matches contiguous in both sequences.
  std::size_t chunks = 0;
};

/// Exact-match unigram alignment with the most matches, then the fewest
/// chunks. Exact up to `node_limit` search nodes; past that, the best
/// alignment found so far.
Alignment meteor_alignment(Tokens hypothesis, Tokens reference, std::size_t node_limit = 2'000'000);

/// Fmean * (1 - 0.5 * (chunks / matches)^3) with
/// Fmean = 10 P R / (R + 9 P). A fraction in [0, 1]; 0 without matches.
double meteor(Tokens hypothesis, Tokens reference);
double meteor_from_alignment(const Alignment& a, std::size_t hyp_len, std::size_t ref_len);

/// Unit-cost Levenshtein distance.
std::size_t edit_distance(Tokens hypothesis, Tokens reference);
/// edit_distance / |ref| * 100. Throws ArgumentError on an empty reference.
double wer(Tokens hypothesis, Tokens reference);

}  // namespace ssum::metrics
