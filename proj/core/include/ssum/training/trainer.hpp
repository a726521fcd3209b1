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

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ssum/common/error.hpp"
#include "ssum/data/dataset.hpp"
#include "ssum/model/seq2seq.hpp"
#include "ssum/training/optimizer.hpp"
#include "ssum/training/scheduler.hpp"
#include "ssum/training/spec_augment.hpp"

namespace ssum::training {

enum class StageKind {
  asr_pretrain,
  lm_pretrain,
  ssum_finetune,
  tsum_finetune,
  transfer_finetune,
};

std::string_view to_string(StageKind kind);
StageKind stage_kind_from_string(std::string_view text);

/// The dataset view a stage trains on.
data::ViewKind expected_view(StageKind kind);

struct TrainConfig {
  StageKind stage = StageKind::asr_pretrain;
  std::size_t batch_size = 16;
  std::size_t max_epochs = 10;
  SchedulerConfig scheduler;
  AdamConfig adam;
  double label_smoothing = 0.1;
  bool use_spec_augment = false;
  SpecAugmentConfig spec_augment;
  double grad_clip = 5.0;
  /// Per-side learning-rate multipliers (e.g. a faster decoder).
  double encoder_lr_scale = 1.0;
  double decoder_lr_scale = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;
  /// Optimizer steps taken so far.
  std::size_t step = 0;
  /// Learning rate of the epoch's last update.
  double lr = 0.0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
  /// Teacher-forced next-token accuracy in [0, 1].
  double validation_accuracy = 0.0;
  /// Parameters whose gradient was exactly zero for the whole epoch.
  std::vector<std::string> untouched_parameters;
};

struct TrainLog {
  std::string stage;
  std::vector<EpochRecord> epochs;

  /// Tab-separated records under a '#'-prefixed header line:
  /// epoch, step, lr, train_loss, validation_loss, validation_accuracy.
  std::string to_tsv() const;
  std::string digest() const;
};

struct TrainResult {
  /// Parameters of the epoch with the best validation accuracy.
  model::Seq2SeqModel model;
  TrainLog log;
  std::size_t best_epoch = 0;
  double best_validation_accuracy = 0.0;
};

struct BatchEvent {
  std::size_t epoch = 0;
  const std::vector<std::size_t>* indices = nullptr;
  bool artificial = false;
};

struct TrainHooks {
  std::function<void(const BatchEvent&)> on_batch;
  std::function<void(const EpochRecord&)> on_epoch;
};

/// Raised when a stage cannot complete; the message names the stage.
class StageError : public Error {
 public:
  using Error::Error;
};

/// Teacher-forced minibatch training of every parameter. Returns the
/// checkpoint with the best validation accuracy (earliest on ties).
TrainResult train_stage(model::Seq2SeqModel model, const data::PairedDataset& train,
                        const data::PairedDataset& validation, const TrainConfig& config,
                        const TrainHooks& hooks = {});

struct Evaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

/// Mean label-smoothed loss and token accuracy under teacher forcing.
Evaluation evaluate_teacher_forced(const model::Seq2SeqModel& model,
                                   const data::PairedDataset& dataset, double label_smoothing);

}  // namespace ssum::training
