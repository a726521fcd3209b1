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

#include "ssum/metrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <unordered_map>

#include "ssum/common/error.hpp"

namespace ssum::metrics {

std::vector<std::string> tokenize_for_scoring(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c) || std::ispunct(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(c));
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(Tokens t, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++counts[{t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i + n)}];
  return counts;
}

Prf from_counts(std::size_t overlap, std::size_t hyp_total, std::size_t ref_total) {
  if (overlap == 0 || hyp_total == 0 || ref_total == 0) return {};
  const double o = static_cast<double>(overlap);
  return {100.0 * o / static_cast<double>(hyp_total), 100.0 * o / static_cast<double>(ref_total),
          200.0 * o / static_cast<double>(hyp_total + ref_total)};
}

// Depth-first search over hypothesis positions for the alignment with the
// most matches and, among those, the fewest chunks.
class AlignmentSearch {
 public:
  AlignmentSearch(Tokens hyp, Tokens ref, std::size_t node_limit) : node_limit_(node_limit) {
    std::unordered_map<std::string, int> ids;
    auto id_of = [&](const std::string& s) {
      return ids.try_emplace(s, static_cast<int>(ids.size())).first->second;
    };
    for (const auto& s : hyp) hyp_.push_back(id_of(s));
    for (const auto& s : ref) ref_.push_back(id_of(s));
    const std::size_t types = ids.size();
    std::vector<std::size_t> hyp_count(types, 0), ref_count(types, 0);
    for (int w : hyp_) ++hyp_count[static_cast<std::size_t>(w)];
    for (int w : ref_) ++ref_count[static_cast<std::size_t>(w)];
    need_.resize(types);
    for (std::size_t w = 0; w < types; ++w) {
      need_[w] = std::min(hyp_count[w], ref_count[w]);
      total_ += need_[w];
    }
    // Occurrences of hyp_[i]'s type strictly after position i.
    later_.resize(hyp_.size());
    std::vector<std::size_t> seen(types, 0);
    for (std::size_t i = hyp_.size(); i-- > 0;) {
      later_[i] = seen[static_cast<std::size_t>(hyp_[i])]++;
    }
    used_.assign(ref_.size(), 0);
  }

  Alignment run() {
    if (total_ == 0) return {};
    visit(0, -1, 0, 0);
    return {total_, best_chunks_};
  }

 private:
  void visit(std::size_t i, long prev, std::size_t matched, std::size_t adjacent) {
    if (matched > 0 && matched - adjacent >= best_chunks_) return;
    if (++nodes_ > node_limit_ && best_chunks_ != kNone) return;
    if (matched == total_) {
      best_chunks_ = matched - adjacent;
      return;
    }
    if (i == hyp_.size()) return;
    const auto w = static_cast<std::size_t>(hyp_[i]);
    if (need_[w] > 0) {
      --need_[w];
      auto take = [&](std::size_t j) {
        used_[j] = 1;
        visit(i + 1, static_cast<long>(j), matched + 1,
              adjacent + (prev >= 0 && static_cast<long>(j) == prev + 1 ? 1 : 0));
        used_[j] = 0;
      };
      const auto next = static_cast<std::size_t>(prev + 1);
      if (prev >= 0 && next < ref_.size() && !used_[next] && ref_[next] == hyp_[i]) take(next);
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (used_[j] || ref_[j] != hyp_[i] || (prev >= 0 && j == next)) continue;
        take(j);
      }
      ++need_[w];
    }
    // Skipping is only allowed if later occurrences can still cover the need.
    if (later_[i] >= need_[w]) visit(i + 1, -1, matched, adjacent);
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<int> hyp_, ref_;
  std::vector<std::size_t> need_, later_;
  std::vector<char> used_;
  std::size_t total_ = 0;
  std::size_t best_chunks_ = kNone;
  std::size_t nodes_ = 0;
  std::size_t node_limit_;
};

}  // namespace

Prf rouge_n(Tokens hypothesis, Tokens reference, std::size_t n) {
  if (n == 0) throw ArgumentError("rouge_n: n must be at least 1");
  if (hypothesis.size() < n || reference.size() < n) return {};
  const auto h = ngram_counts(hypothesis, n);
  const auto r = ngram_counts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : h) {
    if (auto it = r.find(gram); it != r.end()) overlap += std::min(count, it->second);
  }
  return from_counts(overlap, hypothesis.size() - n + 1, reference.size() - n + 1);
}

std::size_t lcs_length(Tokens a, Tokens b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

Prf rouge_l(Tokens hypothesis, Tokens reference) {
  return from_counts(lcs_length(hypothesis, reference), hypothesis.size(), reference.size());
}

Alignment meteor_alignment(Tokens hypothesis, Tokens reference, std::size_t node_limit) {
  return AlignmentSearch(hypothesis, reference, node_limit).run();
}

double meteor_from_alignment(const Alignment& a, std::size_t hyp_len, std::size_t ref_len) {
  if (a.matches == 0) return 0.0;
  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(hyp_len);
  const double r = m / static_cast<double>(ref_len);
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double frag = static_cast<double>(a.chunks) / m;
  return fmean * (1.0 - 0.5 * frag * frag * frag);
}

double meteor(Tokens hypothesis, Tokens reference) {
  return meteor_from_alignment(meteor_alignment(hypothesis, reference), hypothesis.size(),
                               reference.size());
}

std::size_t edit_distance(Tokens hypothesis, Tokens reference) {
  std::vector<std::size_t> row(reference.size() + 1);
  for (std::size_t j = 0; j <= reference.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= hypothesis.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= reference.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (hypothesis[i - 1] == reference[j - 1] ? 0 : 1);
      row[j] = std::min({sub, row[j] + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[reference.size()];
}

double wer(Tokens hypothesis, Tokens reference) {
  if (reference.empty()) throw ArgumentError("wer: empty reference");
  return 100.0 * static_cast<double>(edit_distance(hypothesis, reference)) /
         static_cast<double>(reference.size());
}

}  // namespace ssum::metrics
