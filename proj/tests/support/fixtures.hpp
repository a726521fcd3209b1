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

// Small corpora and models shared by the unit tests.

#include "grad_cases.hpp"
#include "ssum/data/corpus.hpp"

namespace ssum::testing {

inline data::CorpusConfig small_corpus_config() {
  data::CorpusConfig c;
  c.vocab_words = 12;
  c.keywords = 4;
  c.frames_per_word = 4;
  c.feature_dim = 4;
  c.min_words = 4;
  c.max_words = 8;
  c.max_frames = 28;
  c.train_size = 24;
  c.validation_size = 8;
  c.evaluation_size = 8;
  c.seed = 5;
  return c;
}

inline const data::Corpus& small_corpus() {
  static const data::Corpus corpus = data::generate_corpus(small_corpus_config());
  return corpus;
}

inline model::Seq2SeqModel small_model(model::EncoderKind kind, std::uint64_t seed = 1) {
  const auto& vocab = small_corpus().vocabulary();
  return model::Seq2SeqModel(tiny_config(kind, vocab.size()), vocab, seed);
}

}  // namespace ssum::testing
