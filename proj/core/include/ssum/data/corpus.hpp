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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssum/compute/tensor.hpp"
#include "ssum/data/dataset.hpp"
#include "ssum/model/vocabulary.hpp"

namespace ssum::data {

using compute::Tensor;

struct CorpusConfig {
  /// Content words, excluding the reserved tokens.
  std::size_t vocab_words = 60;
  std::size_t keywords = 12;
  /// Frames rendered per word.
  std::size_t frames_per_word = 8;
  std::size_t feature_dim = 16;
  /// Standard deviation of the Gaussian noise added to every frame.
  double noise = 0.1;
  std::size_t min_words = 6;
  std::size_t max_words = 20;
  /// Probability that a transcription position holds a keyword.
  double keyword_density = 0.25;
  /// Utterances longer than this are cut at a word boundary.
  std::size_t max_frames = 160;
  std::size_t train_size = 2000;
  std::size_t validation_size = 200;
  std::size_t evaluation_size = 200;
  std::uint64_t seed = 1;

  void validate() const;
  friend bool operator==(const CorpusConfig&, const CorpusConfig&) = default;
};

/// Fixed words wrapped around the keywords of every summary.
inline constexpr std::size_t kFrameWords = 3;

/// Word inventory and the acoustic template of every word.
///
/// Word ids are vocabulary ids. The first kFrameWords content words form the
/// summary frame, the next `keywords` are keywords, the rest are filler.
/// Transcriptions draw only from keywords and filler.
struct Lexicon {
  model::Vocabulary vocabulary;
  std::vector<int> frame_words;
  std::vector<int> keywords;
  std::vector<int> fillers;
  /// Indexed by vocabulary id; reserved ids hold empty tensors.
  std::vector<Tensor> templates;

  bool is_keyword(int id) const;
};

/// Builds the lexicon a config implies. Deterministic in config.seed.
Lexicon make_lexicon(const CorpusConfig& config);

/// "learn about" + the transcription's keywords in order + "today".
std::vector<int> summary_rule(const Lexicon& lexicon, std::span<const int> transcription);

struct Triplet {
  std::string id;
  /// T x F with T = frames_per_word * transcription.size().
  Tensor features;
  std::vector<int> transcription;
  std::vector<int> summary;
};

struct Corpus {
  CorpusConfig config;
  Lexicon lexicon;
  std::vector<Triplet> train;
  std::vector<Triplet> validation;
  std::vector<Triplet> evaluation;

  const model::Vocabulary& vocabulary() const noexcept { return lexicon.vocabulary; }
};

/// Template set plus noise level used to turn words into frames.
struct Voice {
  const std::vector<Tensor>* templates = nullptr;
  double noise = 0.0;
};

/// Concatenated word templates plus noise. Values are rounded to float
/// precision so that 32-bit storage is lossless.
Tensor render(std::span<const int> words, const Voice& voice, std::size_t feature_dim, Rng& rng);

/// Nearest-template decoding of every frames_per_word block. Exact for
/// noise-free renderings.
std::vector<int> invert_rendering(const Tensor& features, const Lexicon& lexicon,
                                  std::size_t frames_per_word);

Corpus generate_corpus(const CorpusConfig& config);

/// Denoising corruption for language-model pre-training.
struct LmNoiseConfig {
  /// Probability of replacing a token with <mask>.
  double mask_probability = 0.3;
  /// Each token moves at most this many positions.
  std::size_t shuffle_distance = 2;
  std::uint64_t seed = 7;

  friend bool operator==(const LmNoiseConfig&, const LmNoiseConfig&) = default;
};

std::vector<int> add_lm_noise(std::span<const int> tokens, const LmNoiseConfig& config, Rng& rng);

/// Pairs a split in the requested way. Targets get a trailing <eos>.
PairedDataset view(std::span<const Triplet> split, ViewKind kind, const LmNoiseConfig& noise = {});

/// Seeded uniform sample without replacement of round(fraction * n)
/// examples, kept in their original order. The asr view is never subset.
PairedDataset subset(const PairedDataset& dataset, double fraction, std::uint64_t seed);

/// A transcription/summary text pair from outside the speech corpus.
struct TextPair {
  std::string id;
  std::vector<int> source;
  std::vector<int> summary;
};

/// The external text-summarization corpus: shorter sources with a denser
/// keyword mix over the same lexicon.
struct ExternalTextConfig {
  std::size_t size = 1000;
  std::size_t min_words = 4;
  std::size_t max_words = 12;
  double keyword_density = 0.4;
  std::uint64_t seed = 11;

  friend bool operator==(const ExternalTextConfig&, const ExternalTextConfig&) = default;
};

std::vector<TextPair> generate_external_text(const Lexicon& lexicon, const ExternalTextConfig& config);

/// A second "speaker": its templates blend the corpus templates with
/// independent ones, and it has its own noise level.
struct SyntheticVoiceConfig {
  /// Weight of the independent component, in [0, 1].
  double template_shift = 0.5;
  double noise = 0.05;
  std::uint64_t seed = 13;

  friend bool operator==(const SyntheticVoiceConfig&, const SyntheticVoiceConfig&) = default;
};

std::vector<Tensor> make_synthetic_templates(const Lexicon& lexicon, std::size_t frames_per_word,
                                             const SyntheticVoiceConfig& config);

/// Renders external pairs with the synthetic voice into ssum examples
/// flagged artificial.
PairedDataset synth_augment(std::span<const TextPair> pairs, const Lexicon& lexicon,
                            std::size_t frames_per_word, const SyntheticVoiceConfig& config);

/// Concatenation of two datasets of the same kind.
PairedDataset merge(const PairedDataset& a, const PairedDataset& b);

}  // namespace ssum::data
