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

#include "ssum/metrics/report.hpp"

#include <cstdio>
#include <map>

#include "ssum/common/error.hpp"
#include "ssum/data/storage.hpp"
#include "ssum/metrics/metrics.hpp"

namespace ssum::metrics {

namespace {

std::string fixed(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

ScoreReport score(const std::vector<ScoredPair>& pairs) {
  ScoreReport report;
  std::size_t edits = 0, words = 0;
  for (const ScoredPair& p : pairs) {
    const auto hyp = tokenize_for_scoring(p.hypothesis);
    const auto ref = tokenize_for_scoring(p.reference);
    if (ref.empty()) throw ArgumentError("score: empty reference for '" + p.id + "'");
    SampleScore s;
    s.id = p.id;
    s.rouge1 = rouge_n(hyp, ref, 1).f1;
    s.rouge2 = rouge_n(hyp, ref, 2).f1;
    s.rougeL = rouge_l(hyp, ref).f1;
    s.meteor = 100.0 * meteor(hyp, ref);
    s.edits = edit_distance(hyp, ref);
    s.reference_words = ref.size();
    report.rouge1 += s.rouge1;
    report.rouge2 += s.rouge2;
    report.rougeL += s.rougeL;
    report.meteor += s.meteor;
    edits += s.edits;
    words += s.reference_words;
    report.samples.push_back(std::move(s));
  }
  report.count = pairs.size();
  if (report.count > 0) {
    const double n = static_cast<double>(report.count);
    report.rouge1 /= n;
    report.rouge2 /= n;
    report.rougeL /= n;
    report.meteor /= n;
    report.wer = 100.0 * static_cast<double>(edits) / static_cast<double>(words);
  }
  return report;
}

std::string ScoreReport::to_table() const {
  std::string out;
  out += "samples  ROUGE-1  ROUGE-2  ROUGE-L  METEOR     WER\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "%7zu  %7.2f  %7.2f  %7.2f  %6.2f  %6.2f\n", count, rouge1, rouge2,
                rougeL, meteor, wer);
  out += buf;
  return out;
}

std::string ScoreReport::to_key_values() const {
  std::string out;
  out += "count=" + std::to_string(count) + "\n";
  out += "rouge1=" + fixed(rouge1) + "\n";
  out += "rouge2=" + fixed(rouge2) + "\n";
  out += "rougeL=" + fixed(rougeL) + "\n";
  out += "meteor=" + fixed(meteor) + "\n";
  out += "wer=" + fixed(wer) + "\n";
  return out;
}

ScoreReport evaluate_files(const std::filesystem::path& hypotheses,
                           const std::filesystem::path& references) {
  const auto hyps = data::read_id_text(hypotheses);
  const auto refs = data::read_id_text(references);
  std::map<std::string, const std::string*> by_id;
  for (const auto& h : hyps) by_id[h.id] = &h.text;
  if (hyps.size() != refs.size()) {
    throw IoError("evaluate: " + std::to_string(hyps.size()) + " hypotheses for " +
                  std::to_string(refs.size()) + " references");
  }
  std::vector<ScoredPair> pairs;
  pairs.reserve(refs.size());
  for (const auto& r : refs) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) throw IoError("evaluate: no hypothesis for '" + r.id + "'");
    pairs.push_back({r.id, *it->second, r.text});
  }
  return score(pairs);
}

}  // namespace ssum::metrics
