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

#include <cmath>

#include "grad_cases.hpp"
#include "ssum/common/error.hpp"
#include "ssum/model/seq2seq.hpp"

namespace ssum::model {
namespace {

using testing::tiny_config;
using testing::tiny_vocabulary;

TEST(Vocabulary, ReservedIdsAndRoundTrip) {
  const Vocabulary v = tiny_vocabulary(3);
  EXPECT_EQ(v.size(), 7u);
  EXPECT_EQ(v.token(Vocabulary::kEos), "<eos>");
  const auto ids = v.encode("w2 w0  w1");
  EXPECT_EQ(ids, (std::vector<int>{6, 4, 5}));
  std::vector<int> with_specials{1, 6, 3, 4, 2};
  EXPECT_EQ(v.decode(with_specials), "w2 w0");
  EXPECT_THROW(v.encode("w9"), ArgumentError);
  EXPECT_EQ(Vocabulary::from_tokens(v.tokens()), v);
  EXPECT_EQ(Vocabulary::from_tokens(v.tokens()).hash(), v.hash());
  EXPECT_THROW(Vocabulary::from_tokens({"a", "b"}), ArgumentError);
  EXPECT_NE(tiny_vocabulary(4).hash(), v.hash());
}

TEST(ModelConfig, ValidateRejectsBadShapes) {
  ModelConfig c = ModelConfig::toy_acoustic(40);
  EXPECT_NO_THROW(c.validate());
  c.encoder_heads = 3;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ModelConfig::toy_acoustic(40);
  c.subsample_rate = 3;
  EXPECT_THROW(c.validate(), ArgumentError);
  c = ModelConfig::toy_text(2);
  EXPECT_THROW(c.validate(), ArgumentError);
}

TEST(ModelConfig, JsonRoundTrip) {
  for (const ModelConfig& c : {ModelConfig::toy_acoustic(40), ModelConfig::toy_text(40),
                               ModelConfig::full_scale_acoustic(), ModelConfig::full_scale_text()}) {
    EXPECT_EQ(ModelConfig::from_json(c.to_json()), c);
  }
  EXPECT_THROW(ModelConfig::from_json(R"({"encoder_dimm": 3})"), ArgumentError);
}

TEST(Seq2Seq, LayoutMatchesParameters) {
  for (auto kind : {EncoderKind::acoustic, EncoderKind::text}) {
    const auto vocab = tiny_vocabulary();
    const ModelConfig c = tiny_config(kind, vocab.size());
    const Seq2SeqModel m(c, vocab, 1);
    const auto layout = parameter_layout(c);
    ASSERT_EQ(layout.size(), m.parameters().size());
    for (std::size_t i = 0; i < layout.size(); ++i) {
      EXPECT_EQ(layout[i].name, m.parameters()[i].name);
      EXPECT_EQ(layout[i].shape, m.parameters()[i].value.shape());
      EXPECT_TRUE(is_encoder_parameter(layout[i].name) != is_decoder_parameter(layout[i].name)) << layout[i].name;
    }
    EXPECT_EQ(parameter_count(c), m.parameters().element_count());
  }
}

TEST(Seq2Seq, SeedDeterminesInitialisation) {
  const auto vocab = tiny_vocabulary();
  const ModelConfig c = tiny_config(EncoderKind::acoustic, vocab.size());
  EXPECT_TRUE(bit_equal(Seq2SeqModel(c, vocab, 4).parameters(), Seq2SeqModel(c, vocab, 4).parameters()));
  EXPECT_FALSE(bit_equal(Seq2SeqModel(c, vocab, 4).parameters(), Seq2SeqModel(c, vocab, 5).parameters()));
  const Seq2SeqModel z = Seq2SeqModel::zeros(c, vocab);
  for (const auto& p : z.parameters())
    for (double v : p.value.values()) EXPECT_EQ(v, 0.0);
}

TEST(Seq2Seq, VocabularySizeMustMatchConfig) {
  const auto vocab = tiny_vocabulary();
  EXPECT_THROW(Seq2SeqModel(tiny_config(EncoderKind::text, vocab.size() + 1), vocab, 1), ArgumentError);
}

TEST(Seq2Seq, EncodedLengthFollowsSubsampling) {
  const auto vocab = tiny_vocabulary();
  ModelConfig c = ModelConfig::toy_acoustic(vocab.size());
  const Seq2SeqModel m(c, vocab, 1);
  Rng rng(1);
  for (std::size_t frames : {5u, 8u, 13u, 40u}) {
    const Tensor x = testing::random_tensor({frames, c.feature_dim}, rng);
    EXPECT_EQ(m.encode(x).rows(), m.encoded_length(frames));
    EXPECT_EQ(m.encoded_length(frames), (frames + c.subsample_rate - 1) / c.subsample_rate);
  }
}

TEST(Seq2Seq, SourceKindMustMatchEncoder) {
  const auto vocab = tiny_vocabulary();
  const Seq2SeqModel text(tiny_config(EncoderKind::text, vocab.size()), vocab, 1);
  EXPECT_THROW(text.encode(Source{Tensor({6, 4})}), ArgumentError);
  const Seq2SeqModel speech(tiny_config(EncoderKind::acoustic, vocab.size()), vocab, 1);
  EXPECT_THROW(speech.encode(Source{std::vector<int>{4, 5}}), ArgumentError);
  EXPECT_THROW(speech.encode(Source{Tensor({6, 5})}), ShapeError);
}

TEST(Seq2Seq, DecoderIsCausalAndStepMatchesFullPass) {
  const auto vocab = tiny_vocabulary();
  Rng rng(2);
  for (auto kind : {EncoderKind::acoustic, EncoderKind::text}) {
    const Seq2SeqModel m(tiny_config(kind, vocab.size()), vocab, 3);
    const Source src = testing::random_source(m.config(), rng);
    const Tensor memory = m.encode(src);
    const std::vector<int> prefix{1, 4, 7, 5};
    compute::Tape tape(false);
    const Tensor logits = m.decode_logits(tape, tape.constant(memory), prefix).value();
    for (std::size_t l = 1; l <= prefix.size(); ++l) {
      const auto lp = m.decode_step_log_probs(std::span(prefix).first(l), memory);
      const auto p = m.decode_step(std::span(prefix).first(l), memory);
      double z = 0.0, mx = -1e300;
      for (std::size_t t = 0; t < vocab.size(); ++t) mx = std::max(mx, logits.at(l - 1, t));
      for (std::size_t t = 0; t < vocab.size(); ++t) z += std::exp(logits.at(l - 1, t) - mx);
      double total = 0.0;
      for (std::size_t t = 0; t < vocab.size(); ++t) {
        EXPECT_NEAR(lp[t], logits.at(l - 1, t) - mx - std::log(z), 1e-12);
        total += p[t];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(Seq2Seq, TeacherForcingShiftsTargets) {
  const std::vector<int> targets{5, 6, 2};
  EXPECT_EQ(teacher_forcing_input(targets), (std::vector<int>{1, 5, 6}));
  const auto vocab = tiny_vocabulary();
  const Seq2SeqModel m(tiny_config(EncoderKind::text, vocab.size()), vocab, 3);
  const Tensor d = m.forward_teacher_forced(Source{std::vector<int>{4, 5, 6}}, targets);
  EXPECT_EQ(d.shape(), (compute::Shape{3, vocab.size()}));
}

TEST(Seq2Seq, FullLossGradientMatchesFiniteDifferences) {
  for (auto kind : {EncoderKind::acoustic, EncoderKind::text}) {
    for (std::uint64_t seed : {11u, 12u}) {
      const auto r = testing::model_gradcheck(kind, seed);
      EXPECT_LE(r.max_relative_error, 1e-4) << to_string(kind) << " seed " << seed;
      EXPECT_GT(r.checked, 100u);
    }
  }
}

TEST(Seq2Seq, ToyDimensionGradientsMatchOnSampledCoordinates) {
  const auto vocab = tiny_vocabulary(20);
  for (const ModelConfig& c : {ModelConfig::toy_acoustic(vocab.size()), ModelConfig::toy_text(vocab.size())}) {
    const auto r = testing::model_gradcheck(c, vocab, 21, 4);
    EXPECT_LE(r.max_relative_error, 1e-4) << to_string(c.encoder_kind);
  }
}

}  // namespace
}  // namespace ssum::model
