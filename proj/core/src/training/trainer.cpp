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

#include "ssum/training/trainer.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ssum/common/error.hpp"
#include "ssum/common/hash.hpp"
#include "ssum/training/loss.hpp"

namespace ssum::training {

using compute::Tensor;

std::string_view to_string(StageKind kind) {
  switch (kind) {
    case StageKind::asr_pretrain: return "asr-pretrain";
    case StageKind::lm_pretrain: return "lm-pretrain";
    case StageKind::ssum_finetune: return "ssum-finetune";
    case StageKind::tsum_finetune: return "tsum-finetune";
    case StageKind::transfer_finetune: return "transfer-finetune";
  }
  return "unknown";
}

StageKind stage_kind_from_string(std::string_view text) {
  for (StageKind k : {StageKind::asr_pretrain, StageKind::lm_pretrain, StageKind::ssum_finetune,
                      StageKind::tsum_finetune, StageKind::transfer_finetune}) {
    if (to_string(k) == text) return k;
  }
  throw ArgumentError("unknown stage kind '" + std::string(text) + "'");
}

data::ViewKind expected_view(StageKind kind) {
  switch (kind) {
    case StageKind::asr_pretrain: return data::ViewKind::asr;
    case StageKind::lm_pretrain: return data::ViewKind::lm;
    case StageKind::tsum_finetune: return data::ViewKind::tsum;
    case StageKind::ssum_finetune:
    case StageKind::transfer_finetune: return data::ViewKind::ssum;
  }
  return data::ViewKind::ssum;
}

void TrainConfig::validate() const {
  if (batch_size == 0) throw ArgumentError("batch_size must be at least 1");
  if (!(label_smoothing >= 0.0 && label_smoothing < 1.0)) {
    throw ArgumentError("label_smoothing must lie in [0, 1)");
  }
  if (grad_clip <= 0.0) throw ArgumentError("grad_clip must be positive");
  make_scheduler(scheduler);
}

std::string TrainLog::to_tsv() const {
  std::ostringstream out;
  out << "# epoch\tstep\tlr\ttrain_loss\tvalidation_loss\tvalidation_accuracy\n";
  out << std::setprecision(17);
  for (const EpochRecord& r : epochs) {
    out << r.epoch << '\t' << r.step << '\t' << r.lr << '\t' << r.train_loss << '\t'
        << r.validation_loss << '\t' << r.validation_accuracy << '\n';
  }
  return out.str();
}

std::string TrainLog::digest() const { return to_hex(fnv64(to_tsv())); }

namespace {

bool acoustic_source(const model::Source& s) { return std::holds_alternative<Tensor>(s); }

bool stage_augments(StageKind kind) {
  return kind == StageKind::asr_pretrain || kind == StageKind::ssum_finetune ||
         kind == StageKind::transfer_finetune;
}

void check_inputs(const model::Seq2SeqModel& model, const data::PairedDataset& dataset,
                  StageKind stage, const char* role) {
  const std::string name(to_string(stage));
  if (dataset.kind != expected_view(stage)) {
    throw StageError(name + ": " + role + " set is a '" + std::string(data::to_string(dataset.kind)) +
                     "' view, stage expects '" + std::string(data::to_string(expected_view(stage))) + "'");
  }
  const bool wants_acoustic = model.config().encoder_kind == model::EncoderKind::acoustic;
  for (const data::Example& ex : dataset.examples) {
    if (acoustic_source(ex.source) != wants_acoustic) {
      throw StageError(name + ": example '" + ex.id + "' does not match the model's encoder kind");
    }
  }
}

}  // namespace

Evaluation evaluate_teacher_forced(const model::Seq2SeqModel& model,
                                   const data::PairedDataset& dataset, double label_smoothing) {
  Evaluation ev;
  if (dataset.empty()) return ev;
  std::size_t correct = 0, total = 0;
  double loss = 0.0;
  for (const data::Example& ex : dataset.examples) {
    const Tensor dist = model.forward_teacher_forced(ex.source, ex.target);
    loss += label_smoothed_ce(dist, ex.target, label_smoothing);
    const std::size_t k = dist.dim(1);
    for (std::size_t l = 0; l < ex.target.size(); ++l) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < k; ++j) {
        if (dist[l * k + j] > dist[l * k + best]) best = j;
      }
      correct += static_cast<int>(best) == ex.target[l] ? 1 : 0;
      ++total;
    }
  }
  ev.loss = loss / static_cast<double>(dataset.size());
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return ev;
}

TrainResult train_stage(model::Seq2SeqModel model, const data::PairedDataset& train,
                        const data::PairedDataset& validation, const TrainConfig& config,
                        const TrainHooks& hooks) {
  const std::string stage(to_string(config.stage));
  config.validate();
  if (train.empty()) throw StageError(stage + ": empty training set");
  if (validation.empty()) throw StageError(stage + ": empty validation set");
  check_inputs(model, train, config.stage, "training");
  check_inputs(model, validation, config.stage, "validation");

  model::ParameterSet& params = model.parameters();
  const std::size_t n_params = params.size();
  std::vector<double> lr_scales(n_params, 1.0);
  for (std::size_t i = 0; i < n_params; ++i) {
    lr_scales[i] = model::is_encoder_parameter(params[i].name) ? config.encoder_lr_scale
                                                              : config.decoder_lr_scale;
  }
  OptimizerState optimizer = make_optimizer_state(params, config.adam);
  SchedulerState scheduler = make_scheduler(config.scheduler);
  const bool augment = config.use_spec_augment && stage_augments(config.stage);

  TrainResult result{model, TrainLog{stage, {}}, 0, -1.0};
  Rng batch_rng(derive_seed(config.seed, 0xba7c4));
  std::vector<Tensor> grads;
  grads.reserve(n_params);
  for (const auto& p : params) grads.emplace_back(p.value.shape());
  std::size_t step = 0;
  double lr = scheduler.current_lr;

  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    if (config.scheduler.kind == SchedulerKind::linear) lr = scheduler_lr(scheduler, epoch);
    std::vector<char> touched(n_params, 0);
    double epoch_loss = 0.0;
    const auto batches = data::make_batches(train, config.batch_size, batch_rng);
    for (const auto& batch : batches) {
      if (!data::is_homogeneous(train, batch)) {
        throw StageError(stage + ": batch mixes real and artificial examples");
      }
      if (hooks.on_batch) {
        hooks.on_batch(BatchEvent{epoch, &batch, train.examples[batch.front()].artificial});
      }
      for (Tensor& g : grads) g.fill(0.0);
      const double weight = 1.0 / static_cast<double>(batch.size());
      for (std::size_t idx : batch) {
        const data::Example& ex = train.examples[idx];
        compute::Tape tape;
        try {
          model::Source source = ex.source;
          if (augment) {
            if (auto* feats = std::get_if<Tensor>(&source)) {
              Rng rng(derive_seed(config.seed, epoch * train.size() + idx + 1));
              *feats = spec_augment(*feats, config.spec_augment, rng);
            }
          }
          compute::Var memory = model.encode(tape, source);
          const std::vector<int> input = model::teacher_forcing_input(ex.target);
          compute::Var loss = label_smoothed_ce(model.decode_logits(tape, memory, input), ex.target,
                                                config.label_smoothing);
          epoch_loss += loss.value().item();
          const compute::Gradients g = tape.backward(loss);
          for (std::size_t i = 0; i < n_params; ++i) {
            const Tensor* gi = g.find(params[i]);
            if (!gi) continue;
            double* dst = grads[i].data();
            for (std::size_t j = 0; j < gi->size(); ++j) {
              dst[j] += weight * (*gi)[j];
              touched[i] |= (*gi)[j] != 0.0;
            }
          }
        } catch (const NonFiniteError& e) {
          throw StageError(stage + ": diverged at epoch " + std::to_string(epoch + 1) + " (" +
                           e.what() + ")");
        }
      }
      ++step;
      if (config.scheduler.kind == SchedulerKind::noam) lr = scheduler_lr(scheduler, step);
      clip_global_norm(grads, config.grad_clip);
      adam_step(params, grads, optimizer, lr, lr_scales);
    }

    EpochRecord rec;
    rec.epoch = epoch + 1;
    rec.step = step;
    rec.lr = lr;
    rec.train_loss = epoch_loss / static_cast<double>(train.size());
    if (!std::isfinite(rec.train_loss)) {
      throw StageError(stage + ": training loss is not finite at epoch " + std::to_string(rec.epoch));
    }
    const Evaluation ev = evaluate_teacher_forced(model, validation, config.label_smoothing);
    rec.validation_loss = ev.loss;
    rec.validation_accuracy = ev.accuracy;
    for (std::size_t i = 0; i < n_params; ++i) {
      if (!touched[i]) rec.untouched_parameters.push_back(params[i].name);
    }
    if (config.scheduler.kind == SchedulerKind::plateau) {
      lr = scheduler_lr(scheduler, epoch, ev.loss);
    }
    if (ev.accuracy > result.best_validation_accuracy) {
      result.best_validation_accuracy = ev.accuracy;
      result.best_epoch = rec.epoch;
      result.model = model;
    }
    if (hooks.on_epoch) hooks.on_epoch(rec);
    result.log.epochs.push_back(std::move(rec));
  }
  if (result.best_epoch == 0) result.model = model;
  return result;
}

}  // namespace ssum::training
