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

#include "fixtures.hpp"
#include "ssum/common/error.hpp"
#include "ssum/decoding/search.hpp"

namespace ssum::decoding {
namespace {

using testing::RiggedScorer;

/// Fixed table scorer: log-probs depend only on the prefix length.
class TableScorer final : public TokenScorer {
 public:
  explicit TableScorer(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {}
  std::size_t vocab_size() const override { return rows_[0].size(); }
  std::vector<double> log_probs(std::span<const int> prefix) const override {
    return rows_[std::min(prefix.size() - 1, rows_.size() - 1)];
  }

 private:
  std::vector<std::vector<double>> rows_;
};

constexpr double kNo = -std::numeric_limits<double>::infinity();

TEST(Greedy, StopsAtEosAndLength) {
  const TableScorer s({{kNo, kNo, std::log(0.2), kNo, std::log(0.8)},
                       {kNo, kNo, std::log(0.6), kNo, std::log(0.4)}});
  EXPECT_EQ(greedy_decode(s, 10), (std::vector<int>{4}));
  EXPECT_EQ(greedy_decode(s, 1), (std::vector<int>{4}));
  const TableScorer loop({{kNo, kNo, -5.0, kNo, -0.1}});
  EXPECT_EQ(greedy_decode(loop, 3), (std::vector<int>{4, 4, 4}));
}

TEST(Greedy, TiesGoToLowestId) {
  const TableScorer s({{kNo, kNo, -1.0, kNo, -0.5, -0.5}, {kNo, kNo, 0.0, kNo, -1.0, -1.0}});
  EXPECT_EQ(greedy_decode(s, 5), (std::vector<int>{4}));
}

TEST(Beam, LengthRewardCanPreferLongerOutput) {
  // Ending now: log 0.5. Continuing with one token then ending: log 0.5 + log 0.9.
  const TableScorer s({{kNo, kNo, std::log(0.5), kNo, std::log(0.5)},
                       {kNo, kNo, std::log(0.9), kNo, std::log(0.1)}});
  BeamConfig c;
  c.width = 4;
  c.max_length = 4;
  c.length_penalty = 0.0;
  EXPECT_EQ(beam_search(s, c).front().output(), std::vector<int>{});
  c.length_penalty = 0.2;
  EXPECT_EQ(beam_search(s, c).front().output(), (std::vector<int>{4}));
}

TEST(Beam, ScoresAndFlagsAreConsistent) {
  const RiggedScorer s(3, 17);
  BeamConfig c;
  c.width = 3;
  c.max_length = 4;
  c.length_penalty = 0.25;
  const auto hyps = beam_search(s, c);
  ASSERT_FALSE(hyps.empty());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto& h = hyps[i];
    EXPECT_EQ(h.tokens.front(), model::Vocabulary::kSos);
    EXPECT_EQ(h.finished, h.tokens.back() == model::Vocabulary::kEos);
    if (!h.finished) EXPECT_EQ(h.emitted(), c.max_length);
    EXPECT_DOUBLE_EQ(h.score, h.log_prob + c.length_penalty * static_cast<double>(h.emitted()));
    if (i > 0) EXPECT_GE(hyps[i - 1].score, h.score);
  }
}

TEST(Beam, WidthOneIsGreedyOnRiggedScorers) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RiggedScorer s(4, seed);
    BeamConfig c;
    c.width = 1;
    c.max_length = 6;
    c.length_penalty = 0.0;
    EXPECT_EQ(beam_search(s, c).front().output(), greedy_decode(s, 6)) << seed;
  }
}

TEST(Beam, WidthOneIsGreedyOnModels) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = testing::small_model(seed % 2 ? model::EncoderKind::text : model::EncoderKind::acoustic, seed);
    const auto src = testing::random_source(m.config(), rng);
    BeamConfig c;
    c.width = 1;
    c.max_length = 8;
    for (double alpha : {0.0, 0.7, -0.4}) {
      c.length_penalty = alpha;
      EXPECT_EQ(beam_search(m, src, c).front().output(), greedy_decode(m, src, 8));
    }
  }
}

TEST(Beam, ExhaustiveWidthFindsEnumerationArgmax) {
  for (std::size_t content : {1u, 2u}) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const RiggedScorer s(content, seed);
      for (double alpha : {-1.0, 0.0, 0.5, 2.0}) {
        const auto want = testing::exhaustive_best(s, 3, alpha);
        for (bool end : {false, true}) {
          BeamConfig c;
          c.width = 27;
          c.max_length = 3;
          c.length_penalty = alpha;
          c.end_detection = end;
          const auto got = beam_search(s, c).front();
          EXPECT_EQ(got.tokens, want.tokens) << "seed " << seed << " alpha " << alpha << " end " << end;
          EXPECT_NEAR(got.score, want.score, 1e-12);
        }
      }
    }
  }
}

TEST(Beam, EndDetectionDoesNotChangeTheBest) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RiggedScorer s(5, seed);
    BeamConfig c;
    c.width = 4;
    c.max_length = 7;
    c.length_penalty = 0.1 * static_cast<double>(seed % 5) - 0.2;
    c.end_detection = true;
    const auto a = beam_search(s, c);
    c.end_detection = false;
    const auto b = beam_search(s, c);
    EXPECT_EQ(a.front().tokens, b.front().tokens) << seed;
  }
}

TEST(Beam, DetectEndBound) {
  BeamConfig c;
  c.max_length = 10;
  c.length_penalty = 0.5;
  Hypothesis fin{{1, 4, 2}, -1.0, true, -1.0 + 0.5 * 2};
  Hypothesis act{{1, 4}, -6.0, false, 0.0};
  std::vector<Hypothesis> active{act}, done{fin};
  // Bound for a non-negative reward: -6 + 0.5 * 10 = -1 <= 0.
  EXPECT_TRUE(detect_end(active, done, c));
  active[0].log_prob = -4.5;
  EXPECT_FALSE(detect_end(active, done, c));
  c.end_detection = false;
  EXPECT_FALSE(detect_end(active, done, c));
  EXPECT_TRUE(detect_end({}, done, c));
  c.length_penalty = -1.0;
  EXPECT_DOUBLE_EQ(score_bound(act, c), -6.0 - 2.0);
}

TEST(Beam, ConfigValidation) {
  const RiggedScorer s(2, 1);
  BeamConfig c;
  c.width = 0;
  EXPECT_THROW(beam_search(s, c), ArgumentError);
  c.width = 2;
  c.max_length = 0;
  EXPECT_THROW(beam_search(s, c), ArgumentError);
}

}  // namespace
}  // namespace ssum::decoding
