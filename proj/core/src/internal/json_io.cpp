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

#include "json_io.hpp"

#include "key_reader.hpp"

namespace ssum::training {

void to_json(nlohmann::json& j, const AdamConfig& c) {
  j = {{"beta1", c.beta1}, {"beta2", c.beta2}, {"epsilon", c.epsilon}, {"weight_decay", c.weight_decay}};
}

void from_json(const nlohmann::json& j, AdamConfig& c) {
  internal::KeyReader(j, "adam")
      .get("beta1", c.beta1)
      .get("beta2", c.beta2)
      .get("epsilon", c.epsilon)
      .get("weight_decay", c.weight_decay)
      .finish();
}

void to_json(nlohmann::json& j, const SpecAugmentConfig& c) {
  j = {{"time_masks", c.time_masks},
       {"max_time_width", c.max_time_width},
       {"freq_masks", c.freq_masks},
       {"max_freq_width", c.max_freq_width}};
}

void from_json(const nlohmann::json& j, SpecAugmentConfig& c) {
  internal::KeyReader(j, "spec_augment")
      .get("time_masks", c.time_masks)
      .get("max_time_width", c.max_time_width)
      .get("freq_masks", c.freq_masks)
      .get("max_freq_width", c.max_freq_width)
      .finish();
}

void to_json(nlohmann::json& j, const SchedulerConfig& c) {
  j = {{"kind", std::string(to_string(c.kind))},
       {"lr", c.lr},
       {"warmup_steps", c.warmup_steps},
       {"decay_epochs", c.decay_epochs},
       {"factor", c.factor},
       {"patience", c.patience}};
}

void from_json(const nlohmann::json& j, SchedulerConfig& c) {
  std::string kind(to_string(c.kind));
  internal::KeyReader(j, "scheduler")
      .get("kind", kind)
      .get("lr", c.lr)
      .get("warmup_steps", c.warmup_steps)
      .get("decay_epochs", c.decay_epochs)
      .get("factor", c.factor)
      .get("patience", c.patience)
      .finish();
  c.kind = scheduler_kind_from_string(kind);
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"stage", std::string(to_string(c.stage))},
       {"batch_size", c.batch_size},
       {"max_epochs", c.max_epochs},
       {"scheduler", c.scheduler},
       {"adam", c.adam},
       {"label_smoothing", c.label_smoothing},
       {"use_spec_augment", c.use_spec_augment},
       {"spec_augment", c.spec_augment},
       {"grad_clip", c.grad_clip},
       {"encoder_lr_scale", c.encoder_lr_scale},
       {"decoder_lr_scale", c.decoder_lr_scale}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  std::string stage(to_string(c.stage));
  internal::KeyReader(j, "train")
      .get("stage", stage)
      .get("batch_size", c.batch_size)
      .get("max_epochs", c.max_epochs)
      .get("scheduler", c.scheduler)
      .get("adam", c.adam)
      .get("label_smoothing", c.label_smoothing)
      .get("use_spec_augment", c.use_spec_augment)
      .get("spec_augment", c.spec_augment)
      .get("grad_clip", c.grad_clip)
      .get("encoder_lr_scale", c.encoder_lr_scale)
      .get("decoder_lr_scale", c.decoder_lr_scale)
      .finish();
  c.stage = stage_kind_from_string(stage);
}

}  // namespace ssum::training

namespace ssum::data {

void to_json(nlohmann::json& j, const CorpusConfig& c) {
  j = {{"vocab_words", c.vocab_words},
       {"keywords", c.keywords},
       {"frames_per_word", c.frames_per_word},
       {"feature_dim", c.feature_dim},
       {"noise", c.noise},
       {"min_words", c.min_words},
       {"max_words", c.max_words},
       {"keyword_density", c.keyword_density},
       {"max_frames", c.max_frames},
       {"train_size", c.train_size},
       {"validation_size", c.validation_size},
       {"evaluation_size", c.evaluation_size},
       {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, CorpusConfig& c) {
  internal::KeyReader(j, "corpus")
      .get("vocab_words", c.vocab_words)
      .get("keywords", c.keywords)
      .get("frames_per_word", c.frames_per_word)
      .get("feature_dim", c.feature_dim)
      .get("noise", c.noise)
      .get("min_words", c.min_words)
      .get("max_words", c.max_words)
      .get("keyword_density", c.keyword_density)
      .get("max_frames", c.max_frames)
      .get("train_size", c.train_size)
      .get("validation_size", c.validation_size)
      .get("evaluation_size", c.evaluation_size)
      .get("seed", c.seed)
      .finish();
}

void to_json(nlohmann::json& j, const LmNoiseConfig& c) {
  j = {{"mask_probability", c.mask_probability}, {"shuffle_distance", c.shuffle_distance}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, LmNoiseConfig& c) {
  internal::KeyReader(j, "lm_noise")
      .get("mask_probability", c.mask_probability)
      .get("shuffle_distance", c.shuffle_distance)
      .get("seed", c.seed)
      .finish();
}

void to_json(nlohmann::json& j, const ExternalTextConfig& c) {
  j = {{"size", c.size},
       {"min_words", c.min_words},
       {"max_words", c.max_words},
       {"keyword_density", c.keyword_density},
       {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ExternalTextConfig& c) {
  internal::KeyReader(j, "external_text")
      .get("size", c.size)
      .get("min_words", c.min_words)
      .get("max_words", c.max_words)
      .get("keyword_density", c.keyword_density)
      .get("seed", c.seed)
      .finish();
}

void to_json(nlohmann::json& j, const SyntheticVoiceConfig& c) {
  j = {{"template_shift", c.template_shift}, {"noise", c.noise}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, SyntheticVoiceConfig& c) {
  internal::KeyReader(j, "synthetic_voice")
      .get("template_shift", c.template_shift)
      .get("noise", c.noise)
      .get("seed", c.seed)
      .finish();
}

}  // namespace ssum::data

namespace ssum::decoding {

void to_json(nlohmann::json& j, const BeamConfig& c) {
  j = {{"width", c.width},
       {"length_penalty", c.length_penalty},
       {"max_length", c.max_length},
       {"end_detection", c.end_detection}};
}

void from_json(const nlohmann::json& j, BeamConfig& c) {
  internal::KeyReader(j, "beam")
      .get("width", c.width)
      .get("length_penalty", c.length_penalty)
      .get("max_length", c.max_length)
      .get("end_detection", c.end_detection)
      .finish();
}

}  // namespace ssum::decoding
