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
#include <limits>
#include <optional>
#include <string_view>

namespace ssum::training {

enum class SchedulerKind {
  /// peak * min(step / warmup, sqrt(warmup / step)), indexed by optimizer step.
  noam,
  /// Start value, multiplied by `factor` once validation loss has failed to
  /// improve on `patience` + 1 consecutive validations.
  plateau,
  /// start * (1 - epoch / decay_epochs), floored at zero, indexed by epoch.
  linear,
  constant,
};

std::string_view to_string(SchedulerKind kind);
SchedulerKind scheduler_kind_from_string(std::string_view text);

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::constant;
  /// Noam peak, or the starting value for the other kinds.
  double lr = 1e-3;
  std::size_t warmup_steps = 1;
  std::size_t decay_epochs = 1;
  double factor = 0.5;
  std::size_t patience = 1;
};

struct SchedulerState {
  SchedulerConfig config;
  double current_lr = 0.0;
  double best_validation_loss = std::numeric_limits<double>::infinity();
  std::size_t bad_validations = 0;
};

SchedulerState make_scheduler(const SchedulerConfig& config);

/// Learning rate for the given optimizer step (noam, 1-based) or epoch
/// (linear, 0-based). For plateau the call consumes `validation_loss`,
/// updates the state, and returns the rate to use from now on; calling it
/// without a validation loss is an ArgumentError. Always returns >= 0.
double scheduler_lr(SchedulerState& state, std::size_t step_or_epoch,
                    std::optional<double> validation_loss = std::nullopt);

}  // namespace ssum::training
