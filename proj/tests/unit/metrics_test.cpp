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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "ssum/common/error.hpp"
#include "ssum/metrics/metrics.hpp"
#include "ssum/metrics/report.hpp"

namespace ssum::metrics {
namespace {

using Words = std::vector<std::string>;

Words random_words(Rng& rng, std::size_t min_len, std::size_t max_len, std::size_t alphabet) {
  Words out(rng.between(min_len, max_len));
  for (auto& w : out) w = std::string(1, static_cast<char>('a' + rng.index(alphabet)));
  return out;
}

TEST(Tokenize, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(tokenize_for_scoring("The cat, sat.  On\tTHE mat!"),
            (Words{"the", "cat", "sat", "on", "the", "mat"}));
  EXPECT_TRUE(tokenize_for_scoring("  ...  ").empty());
}

TEST(Rouge, HandCheckedValues) {
  const Words hyp{"the", "cat", "sat"}, ref{"the", "cat"};
  const Prf r1 = rouge_n(hyp, ref, 1);
  EXPECT_EQ(r1.f1, 80.0);
  EXPECT_EQ(r1.recall, 100.0);
  EXPECT_EQ(rouge_n(hyp, ref, 2).f1, 200.0 * 1 / (2 + 1));
  EXPECT_EQ(rouge_n(Words{"a", "a", "a"}, Words{"a"}, 1).precision, 100.0 / 3.0);
  EXPECT_EQ(rouge_n(Words{}, ref, 1).f1, 0.0);
  EXPECT_EQ(rouge_l(Words{"a", "b", "c", "d"}, Words{"a", "c", "d"}).f1, 200.0 * 3 / 7);
}

TEST(Rouge, LcsMatchesDynamicProgramming) {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    const Words a = random_words(rng, 0, 15, 6), b = random_words(rng, 0, 15, 6);
    const std::size_t want = testing::dp_lcs(a, b);
    EXPECT_EQ(lcs_length(a, b), want);
    const double f = a.empty() || b.empty() || want == 0 ? 0.0 : 200.0 * static_cast<double>(want) / static_cast<double>(a.size() + b.size());
    EXPECT_DOUBLE_EQ(rouge_l(a, b).f1, f);
  }
}

TEST(Meteor, HandCheckedValues) {
  Words ten;
  for (int i = 0; i < 10; ++i) ten.push_back("w" + std::to_string(i));
  EXPECT_EQ(meteor(ten, ten), 0.9995);
  EXPECT_EQ(meteor(Words{"x"}, ten), 0.0);
  EXPECT_EQ(meteor(Words{}, ten), 0.0);
  // Two matches in two chunks: P = R = 1, frag = 1.
  EXPECT_DOUBLE_EQ(meteor(Words{"b", "a"}, Words{"a", "b"}), 0.5);
}

TEST(Meteor, AlignmentMatchesExhaustiveSearch) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Words h = random_words(rng, 1, 7, 5), r = random_words(rng, 1, 7, 5);
    const auto [m, chunks] = testing::exhaustive_alignment(h, r);
    const Alignment got = meteor_alignment(h, r);
    EXPECT_EQ(got.matches, m);
    EXPECT_EQ(got.chunks, chunks);
    EXPECT_EQ(meteor(h, r), meteor_from_alignment({m, chunks}, h.size(), r.size()));
  }
}

TEST(Meteor, ScoreFormula) {
  // P = 2/3, R = 1/2, one chunk.
  const double p = 2.0 / 3, r = 0.5;
  const double fmean = 10 * p * r / (r + 9 * p);
  EXPECT_DOUBLE_EQ(meteor_from_alignment({2, 1}, 3, 4), fmean * (1 - 0.5 * 0.125));
}

TEST(Wer, MatchesEditDistanceOracle) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Words h = random_words(rng, 0, 12, 4), r = random_words(rng, 1, 12, 4);
    const std::size_t d = testing::dp_edit(h, r);
    EXPECT_EQ(edit_distance(h, r), d);
    EXPECT_DOUBLE_EQ(wer(h, r), 100.0 * static_cast<double>(d) / static_cast<double>(r.size()));
  }
  EXPECT_THROW(wer(Words{"a"}, Words{}), ArgumentError);
}

TEST(Report, ScoresAreAveragedAndWerPooled) {
  const auto rep = score({{"1", "the cat sat", "the cat"}, {"2", "a b", "a b c d"}});
  EXPECT_EQ(rep.count, 2u);
  EXPECT_DOUBLE_EQ(rep.rouge1, 0.5 * (80.0 + 200.0 * 2 / 6));
  EXPECT_DOUBLE_EQ(rep.wer, 100.0 * 3 / 6);
  EXPECT_NE(rep.to_key_values().find("rouge1=73.333333"), std::string::npos);
}

TEST(Report, FilesAreJoinedById) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ssum-metrics-test";
  fs::create_directories(dir);
  std::ofstream(dir / "hyp.txt") << "b\tx y\na\tthe cat sat\n";
  std::ofstream(dir / "ref.txt") << "a\tthe cat\nb\tx y\n";
  const auto rep = evaluate_files(dir / "hyp.txt", dir / "ref.txt");
  ASSERT_EQ(rep.samples.size(), 2u);
  EXPECT_EQ(rep.samples[0].id, "a");
  EXPECT_EQ(rep.samples[0].rouge1, 80.0);
  std::ofstream(dir / "short.txt") << "a\tthe cat\n";
  EXPECT_THROW(evaluate_files(dir / "short.txt", dir / "ref.txt"), IoError);
}

}  // namespace
}  // namespace ssum::metrics
