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

#include "ssum/data/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "ssum/common/error.hpp"
#include "ssum/common/hash.hpp"
#include "ssum/common/random.hpp"

namespace ssum::data {

using model::Vocabulary;

namespace {

constexpr std::array<const char*, 3> kFrameText = {"learn", "about", "today"};
constexpr std::array<const char*, 14> kOnsets = {"b", "d", "f", "g", "k", "l", "m",
                                                 "n", "p", "r", "s", "t", "v", "z"};
constexpr std::array<const char*, 5> kNuclei = {"a", "e", "i", "o", "u"};

// Streams for derive_seed; each sample of each split gets its own.
constexpr std::uint64_t kLexiconStream = 1;
constexpr std::uint64_t kTemplateStream = 2;
constexpr std::uint64_t kSplitStream[3] = {0x100000000ULL, 0x200000000ULL, 0x300000000ULL};

std::string pseudo_word(Rng& rng) {
  const std::size_t syllables = rng.between(2, 3);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w += kOnsets[rng.index(kOnsets.size())];
    w += kNuclei[rng.index(kNuclei.size())];
  }
  return w;
}

float to_float(double v) { return static_cast<float>(v); }

std::vector<int> draw_words(const Lexicon& lex, std::size_t min_words, std::size_t max_words,
                            double density, Rng& rng) {
  const std::size_t n = rng.between(min_words, max_words);
  std::vector<int> words(n);
  for (int& w : words) {
    w = rng.bernoulli(density) ? lex.keywords[rng.index(lex.keywords.size())]
                               : lex.fillers[rng.index(lex.fillers.size())];
  }
  return words;
}

std::vector<Triplet> generate_split(const Corpus& corpus, const char* prefix, std::size_t count,
                                    std::uint64_t stream) {
  const CorpusConfig& c = corpus.config;
  const std::size_t word_cap = c.max_frames / c.frames_per_word;
  const Voice voice{&corpus.lexicon.templates, c.noise};
  std::vector<Triplet> split;
  split.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(c.seed, stream + i));
    Triplet t;
    char id[32];
    std::snprintf(id, sizeof id, "%s-%05zu", prefix, i);
    t.id = id;
    t.transcription = draw_words(corpus.lexicon, c.min_words, c.max_words, c.keyword_density, rng);
    if (t.transcription.size() > word_cap) t.transcription.resize(word_cap);
    t.summary = summary_rule(corpus.lexicon, t.transcription);
    t.features = render(t.transcription, voice, c.feature_dim, rng);
    split.push_back(std::move(t));
  }
  return split;
}

}  // namespace

void CorpusConfig::validate() const {
  if (vocab_words < kFrameWords + keywords + 1) {
    throw ArgumentError("vocab_words must cover the " + std::to_string(kFrameWords) +
                        " frame words, the keywords and at least one filler");
  }
  if (keywords == 0) throw ArgumentError("keywords must be at least 1");
  if (frames_per_word == 0 || feature_dim == 0) {
    throw ArgumentError("frames_per_word and feature_dim must be positive");
  }
  if (!(noise >= 0.0)) throw ArgumentError("noise must be non-negative");
  if (min_words == 0 || min_words > max_words) {
    throw ArgumentError("word range must satisfy 1 <= min_words <= max_words");
  }
  if (!(keyword_density >= 0.0 && keyword_density <= 1.0)) {
    throw ArgumentError("keyword_density must lie in [0, 1]");
  }
  if (max_frames < frames_per_word) throw ArgumentError("max_frames must hold at least one word");
  if (train_size == 0 || validation_size == 0 || evaluation_size == 0) {
    throw ArgumentError("split sizes must be at least 1");
  }
}

bool Lexicon::is_keyword(int id) const {
  return std::find(keywords.begin(), keywords.end(), id) != keywords.end();
}

Lexicon make_lexicon(const CorpusConfig& config) {
  config.validate();
  Rng rng(derive_seed(config.seed, kLexiconStream));
  std::vector<std::string> words(kFrameText.begin(), kFrameText.end());
  std::set<std::string> seen(words.begin(), words.end());
  while (words.size() < config.vocab_words) {
    std::string w = pseudo_word(rng);
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  Lexicon lex{Vocabulary(words), {}, {}, {}, {}};
  const int first = static_cast<int>(Vocabulary::kReserved);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const int id = first + static_cast<int>(i);
    if (i < kFrameWords) {
      lex.frame_words.push_back(id);
    } else if (i < kFrameWords + config.keywords) {
      lex.keywords.push_back(id);
    } else {
      lex.fillers.push_back(id);
    }
  }
  Rng trng(derive_seed(config.seed, kTemplateStream));
  lex.templates.resize(lex.vocabulary.size());
  for (std::size_t id = Vocabulary::kReserved; id < lex.templates.size(); ++id) {
    Tensor t({config.frames_per_word, config.feature_dim});
    for (double& v : t.values()) v = to_float(trng.normal());
    lex.templates[id] = std::move(t);
  }
  return lex;
}

std::vector<int> summary_rule(const Lexicon& lexicon, std::span<const int> transcription) {
  std::vector<int> out{lexicon.frame_words[0], lexicon.frame_words[1]};
  for (int w : transcription) {
    if (lexicon.is_keyword(w)) out.push_back(w);
  }
  out.push_back(lexicon.frame_words[2]);
  return out;
}

Tensor render(std::span<const int> words, const Voice& voice, std::size_t feature_dim, Rng& rng) {
  if (!voice.templates) throw ArgumentError("render: voice has no templates");
  if (words.empty()) throw ArgumentError("render: no words");
  std::size_t frames = 0;
  for (int w : words) {
    if (w < 0 || static_cast<std::size_t>(w) >= voice.templates->size() ||
        (*voice.templates)[static_cast<std::size_t>(w)].empty()) {
      throw ArgumentError("render: word id " + std::to_string(w) + " has no template");
    }
    frames += (*voice.templates)[static_cast<std::size_t>(w)].dim(0);
  }
  Tensor out({frames, feature_dim});
  double* dst = out.data();
  for (int w : words) {
    const Tensor& t = (*voice.templates)[static_cast<std::size_t>(w)];
    if (t.dim(1) != feature_dim) throw ShapeError("render: template width differs from feature_dim");
    for (double v : t.values()) {
      const double noise = voice.noise > 0.0 ? voice.noise * rng.normal() : 0.0;
      *dst++ = to_float(v + noise);
    }
  }
  return out;
}

std::vector<int> invert_rendering(const Tensor& features, const Lexicon& lexicon,
                                  std::size_t frames_per_word) {
  if (features.rank() != 2 || frames_per_word == 0 || features.dim(0) % frames_per_word != 0) {
    throw ShapeError("invert_rendering: frame count is not a multiple of frames_per_word");
  }
  const std::size_t block = frames_per_word * features.dim(1);
  std::vector<int> words;
  for (std::size_t b = 0; b < features.dim(0) / frames_per_word; ++b) {
    const double* x = features.data() + b * block;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t id = 0; id < lexicon.templates.size(); ++id) {
      const Tensor& t = lexicon.templates[id];
      if (t.size() != block) continue;
      double d = 0.0;
      for (std::size_t k = 0; k < block; ++k) {
        const double e = x[k] - t[k];
        d += e * e;
      }
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(id);
      }
    }
    words.push_back(best);
  }
  return words;
}

Corpus generate_corpus(const CorpusConfig& config) {
  Corpus corpus{config, make_lexicon(config), {}, {}, {}};
  corpus.train = generate_split(corpus, "train", config.train_size, kSplitStream[0]);
  corpus.validation = generate_split(corpus, "valid", config.validation_size, kSplitStream[1]);
  corpus.evaluation = generate_split(corpus, "eval", config.evaluation_size, kSplitStream[2]);
  return corpus;
}

std::vector<int> add_lm_noise(std::span<const int> tokens, const LmNoiseConfig& config, Rng& rng) {
  if (!(config.mask_probability >= 0.0 && config.mask_probability <= 1.0)) {
    throw ArgumentError("mask_probability must lie in [0, 1]");
  }
  std::vector<int> out(tokens.begin(), tokens.end());
  if (config.shuffle_distance > 0) {
    // Sort by position plus uniform jitter in [0, d + 1): no token moves
    // more than d places.
    std::vector<std::pair<double, int>> keyed(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      keyed[i] = {static_cast<double>(i) + rng.uniform() * static_cast<double>(config.shuffle_distance + 1),
                  out[i]};
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = keyed[i].second;
  }
  for (int& t : out) {
    if (rng.bernoulli(config.mask_probability)) t = Vocabulary::kMask;
  }
  return out;
}

PairedDataset view(std::span<const Triplet> split, ViewKind kind, const LmNoiseConfig& noise) {
  PairedDataset out{kind, {}};
  out.examples.reserve(split.size());
  for (const Triplet& t : split) {
    Example ex;
    ex.id = t.id;
    switch (kind) {
      case ViewKind::asr:
        ex.source = t.features;
        ex.target = t.transcription;
        break;
      case ViewKind::tsum:
        ex.source = t.transcription;
        ex.target = t.summary;
        break;
      case ViewKind::ssum:
        ex.source = t.features;
        ex.target = t.summary;
        break;
      case ViewKind::lm: {
        Rng rng(derive_seed(noise.seed, fnv64(t.id)));
        ex.source = add_lm_noise(t.summary, noise, rng);
        ex.target = t.summary;
        break;
      }
    }
    ex.target.push_back(Vocabulary::kEos);
    out.examples.push_back(std::move(ex));
  }
  return out;
}

PairedDataset subset(const PairedDataset& dataset, double fraction, std::uint64_t seed) {
  if (dataset.kind == ViewKind::asr) {
    throw ArgumentError("subset: the asr view always uses the full split");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("subset: fraction must lie in (0, 1]");
  const auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(dataset.size())));
  if (k == 0) throw ArgumentError("subset: fraction selects no examples");
  std::vector<std::size_t> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(k);
  std::sort(order.begin(), order.end());
  PairedDataset out{dataset.kind, {}};
  out.examples.reserve(k);
  for (std::size_t i : order) out.examples.push_back(dataset.examples[i]);
  return out;
}

std::vector<TextPair> generate_external_text(const Lexicon& lexicon, const ExternalTextConfig& config) {
  if (config.min_words == 0 || config.min_words > config.max_words) {
    throw ArgumentError("external text: word range must satisfy 1 <= min_words <= max_words");
  }
  std::vector<TextPair> pairs;
  pairs.reserve(config.size);
  for (std::size_t i = 0; i < config.size; ++i) {
    Rng rng(derive_seed(config.seed, i));
    TextPair p;
    char id[32];
    std::snprintf(id, sizeof id, "ext-%05zu", i);
    p.id = id;
    p.source = draw_words(lexicon, config.min_words, config.max_words, config.keyword_density, rng);
    p.summary = summary_rule(lexicon, p.source);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<Tensor> make_synthetic_templates(const Lexicon& lexicon, std::size_t frames_per_word,
                                             const SyntheticVoiceConfig& config) {
  if (!(config.template_shift >= 0.0 && config.template_shift <= 1.0)) {
    throw ArgumentError("template_shift must lie in [0, 1]");
  }
  if (!(config.noise >= 0.0)) throw ArgumentError("synthetic voice noise must be non-negative");
  Rng rng(config.seed);
  const double keep = std::sqrt(1.0 - config.template_shift * config.template_shift);
  std::vector<Tensor> out(lexicon.templates.size());
  for (std::size_t id = 0; id < out.size(); ++id) {
    const Tensor& base = lexicon.templates[id];
    if (base.empty()) continue;
    if (base.dim(0) != frames_per_word) throw ShapeError("synthetic voice: template length mismatch");
    Tensor t(base.shape());
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = to_float(keep * base[k] + config.template_shift * rng.normal());
    }
    out[id] = std::move(t);
  }
  return out;
}

PairedDataset synth_augment(std::span<const TextPair> pairs, const Lexicon& lexicon,
                            std::size_t frames_per_word, const SyntheticVoiceConfig& config) {
  const std::vector<Tensor> templates = make_synthetic_templates(lexicon, frames_per_word, config);
  const Voice voice{&templates, config.noise};
  const std::size_t feature_dim = templates.back().dim(1);
  PairedDataset out{ViewKind::ssum, {}};
  out.examples.reserve(pairs.size());
  for (const TextPair& p : pairs) {
    Rng rng(derive_seed(config.seed, fnv64(p.id)));
    Example ex;
    ex.id = p.id;
    ex.source = render(p.source, voice, feature_dim, rng);
    ex.target = p.summary;
    ex.target.push_back(Vocabulary::kEos);
    ex.artificial = true;
    out.examples.push_back(std::move(ex));
  }
  return out;
}

PairedDataset merge(const PairedDataset& a, const PairedDataset& b) {
  if (a.kind != b.kind) throw ArgumentError("merge: datasets are different views");
  PairedDataset out = a;
  out.examples.insert(out.examples.end(), b.examples.begin(), b.examples.end());
  return out;
}

}  // namespace ssum::data
