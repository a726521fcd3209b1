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
#include <set>

#include "fixtures.hpp"
#include "ssum/common/error.hpp"
#include "ssum/data/storage.hpp"

namespace ssum::data {
namespace {

namespace fs = std::filesystem;
using testing::small_corpus;
using testing::small_corpus_config;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ssum-data-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Corpus, GenerationIsDeterministic) {
  const Corpus a = generate_corpus(small_corpus_config());
  const Corpus b = generate_corpus(small_corpus_config());
  ASSERT_EQ(a.train.size(), 24u);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].id, b.train[i].id);
    EXPECT_EQ(a.train[i].transcription, b.train[i].transcription);
    EXPECT_TRUE(compute::bit_equal(a.train[i].features, b.train[i].features));
  }
  auto other = small_corpus_config();
  other.seed = 6;
  EXPECT_NE(generate_corpus(other).train[0].transcription, a.train[0].transcription);
}

TEST(Corpus, TripletsFollowTheSummaryRule) {
  const Corpus& c = small_corpus();
  const auto& lex = c.lexicon;
  for (const auto* split : {&c.train, &c.validation, &c.evaluation}) {
    for (const Triplet& t : *split) {
      EXPECT_EQ(t.summary, summary_rule(lex, t.transcription));
      EXPECT_EQ(t.features.rows(), t.transcription.size() * c.config.frames_per_word);
      EXPECT_LE(t.features.rows(), c.config.max_frames);
      EXPECT_GE(t.transcription.size(), 1u);
      for (int w : t.transcription) EXPECT_FALSE(model::Vocabulary::is_special(w));
      ASSERT_GE(t.summary.size(), kFrameWords);
      EXPECT_EQ(t.summary.front(), lex.frame_words[0]);
      EXPECT_EQ(t.summary.back(), lex.frame_words[2]);
    }
  }
}

TEST(Corpus, NoiselessRenderingInvertsExactly) {
  const Corpus& c = small_corpus();
  Rng rng(1);
  for (const Triplet& t : c.train) {
    const Tensor clean = render(t.transcription, {&c.lexicon.templates, 0.0}, c.config.feature_dim, rng);
    EXPECT_EQ(invert_rendering(clean, c.lexicon, c.config.frames_per_word), t.transcription);
    EXPECT_EQ(invert_rendering(t.features, c.lexicon, c.config.frames_per_word), t.transcription);
  }
}

TEST(Corpus, ConfigValidation) {
  auto c = small_corpus_config();
  c.keywords = c.vocab_words;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = small_corpus_config();
  c.min_words = 9;
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(Views, TargetsEndWithEos) {
  const Corpus& c = small_corpus();
  for (ViewKind k : {ViewKind::asr, ViewKind::tsum, ViewKind::ssum, ViewKind::lm}) {
    const PairedDataset d = view(c.train, k);
    EXPECT_EQ(d.kind, k);
    ASSERT_EQ(d.size(), c.train.size());
    for (const Example& e : d.examples) EXPECT_EQ(e.target.back(), model::Vocabulary::kEos);
    EXPECT_EQ(view_kind_from_string(to_string(k)), k);
  }
  const PairedDataset asr = view(c.train, ViewKind::asr);
  EXPECT_TRUE(std::holds_alternative<Tensor>(asr.examples[0].source));
  const PairedDataset tsum = view(c.train, ViewKind::tsum);
  EXPECT_EQ(std::get<std::vector<int>>(tsum.examples[0].source), c.train[0].transcription);
}

TEST(Views, LmNoiseKeepsTokensLocal) {
  Rng rng(3);
  const std::vector<int> tokens{4, 5, 6, 7, 8, 9, 10, 11};
  LmNoiseConfig none{0.0, 0, 1};
  EXPECT_EQ(add_lm_noise(tokens, none, rng), tokens);
  LmNoiseConfig shuffle{0.0, 2, 1};
  for (int trial = 0; trial < 50; ++trial) {
    const auto out = add_lm_noise(tokens, shuffle, rng);
    ASSERT_EQ(out.size(), tokens.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto pos = static_cast<std::size_t>(out[i] - 4);
      EXPECT_LE(pos > i ? pos - i : i - pos, 2u);
    }
    EXPECT_EQ(std::multiset<int>(out.begin(), out.end()), std::multiset<int>(tokens.begin(), tokens.end()));
  }
  LmNoiseConfig all{1.0, 0, 1};
  for (int t : add_lm_noise(tokens, all, rng)) EXPECT_EQ(t, model::Vocabulary::kMask);
}

TEST(Views, SubsetIsDeterministicAndOrdered) {
  const PairedDataset d = view(small_corpus().train, ViewKind::ssum);
  const PairedDataset a = subset(d, 0.25, 4);
  const PairedDataset b = subset(d, 0.25, 4);
  ASSERT_EQ(a.size(), 6u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.examples[i].id, b.examples[i].id);
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LT(a.examples[i - 1].id, a.examples[i].id);
  EXPECT_EQ(subset(d, 1.0, 4).size(), d.size());
  EXPECT_THROW(subset(d, 0.0, 4), ArgumentError);
  EXPECT_THROW(subset(d, 1.5, 4), ArgumentError);
  EXPECT_THROW(subset(view(small_corpus().train, ViewKind::asr), 0.5, 4), ArgumentError);
}

TEST(Views, BatchesNeverMixRealAndArtificial) {
  const Corpus& c = small_corpus();
  const auto ext = generate_external_text(c.lexicon, {.size = 13, .min_words = 3, .max_words = 6, .keyword_density = 0.4, .seed = 2});
  const PairedDataset synth = synth_augment(ext, c.lexicon, c.config.frames_per_word, {});
  for (const Example& e : synth.examples) EXPECT_TRUE(e.artificial);
  const PairedDataset mixed = merge(view(c.train, ViewKind::ssum), synth);
  EXPECT_EQ(mixed.size(), c.train.size() + 13);
  Rng rng(8);
  for (std::size_t bs : {1u, 4u, 5u, 16u}) {
    const auto batches = make_batches(mixed, bs, rng);
    std::vector<int> seen(mixed.size(), 0);
    for (const auto& b : batches) {
      EXPECT_TRUE(is_homogeneous(mixed, b));
      EXPECT_LE(b.size(), bs);
      for (std::size_t i : b) ++seen[i];
    }
    for (int n : seen) EXPECT_EQ(n, 1);
  }
  EXPECT_FALSE(is_homogeneous(mixed, {0, c.train.size()}));
  EXPECT_THROW(merge(view(c.train, ViewKind::ssum), view(c.train, ViewKind::tsum)), ArgumentError);
}

TEST(Views, SyntheticVoiceDiffersFromCorpusVoice) {
  const Corpus& c = small_corpus();
  const auto synth = make_synthetic_templates(c.lexicon, c.config.frames_per_word, {});
  ASSERT_EQ(synth.size(), c.lexicon.templates.size());
  bool differs = false;
  for (std::size_t i = model::Vocabulary::kReserved; i < synth.size(); ++i) {
    EXPECT_EQ(synth[i].shape(), c.lexicon.templates[i].shape());
    differs = differs || !compute::bit_equal(synth[i], c.lexicon.templates[i]);
  }
  EXPECT_TRUE(differs);
}

TEST(Storage, IdTextRoundTripAndErrors) {
  const fs::path dir = scratch("idtext");
  write_id_text(dir / "a.txt", {{"u1", "hello world"}, {"u2", ""}});
  const auto back = read_id_text(dir / "a.txt");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].text, "hello world");
  EXPECT_EQ(back[1].text, "");
  std::ofstream(dir / "dup.txt") << "u1\ta\nu1\tb\n";
  EXPECT_THROW(read_id_text(dir / "dup.txt"), IoError);
  std::ofstream(dir / "notab.txt") << "u1 a\n";
  EXPECT_THROW(read_id_text(dir / "notab.txt"), IoError);
  EXPECT_THROW(read_id_text(dir / "missing.txt"), IoError);
}

TEST(Storage, FeaturesRoundTripAsFloat) {
  const fs::path dir = scratch("features");
  const Tensor x = small_corpus().train[0].features;
  write_features(dir / "x.f32", x);
  EXPECT_TRUE(compute::bit_equal(read_features(dir / "x.f32"), x));
  std::ofstream(dir / "short.f32", std::ios::binary) << "abc";
  EXPECT_THROW(read_features(dir / "short.f32"), IoError);
}

TEST(Storage, CorpusRoundTrip) {
  const fs::path dir = scratch("corpus");
  const Corpus& c = small_corpus();
  write_corpus(c, dir);
  const Corpus back = read_corpus(dir);
  EXPECT_EQ(back.config, c.config);
  EXPECT_EQ(back.vocabulary(), c.vocabulary());
  ASSERT_EQ(back.evaluation.size(), c.evaluation.size());
  for (std::size_t i = 0; i < c.evaluation.size(); ++i) {
    EXPECT_EQ(back.evaluation[i].summary, c.evaluation[i].summary);
    EXPECT_TRUE(compute::bit_equal(back.evaluation[i].features, c.evaluation[i].features));
  }
}

}  // namespace
}  // namespace ssum::data
