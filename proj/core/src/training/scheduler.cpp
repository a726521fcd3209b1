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

#include "ssum/training/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssum/common/error.hpp"

namespace ssum::training {

std::string_view to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::noam: return "noam";
    case SchedulerKind::plateau: return "plateau";
    case SchedulerKind::linear: return "linear";
    case SchedulerKind::constant: return "constant";
  }
  return "constant";
}

SchedulerKind scheduler_kind_from_string(std::string_view text) {
  if (text == "noam") return SchedulerKind::noam;
  if (text == "plateau") return SchedulerKind::plateau;
  if (text == "linear") return SchedulerKind::linear;
  if (text == "constant") return SchedulerKind::constant;
  throw ArgumentError("unknown scheduler kind '" + std::string(text) + "'");
}

SchedulerState make_scheduler(const SchedulerConfig& config) {
  if (config.lr < 0.0) throw ArgumentError("learning rate must be non-negative");
  if (config.kind == SchedulerKind::noam && config.warmup_steps == 0) {
    throw ArgumentError("noam scheduler needs warmup_steps >= 1");
  }
  if (config.kind == SchedulerKind::linear && config.decay_epochs == 0) {
    throw ArgumentError("linear scheduler needs decay_epochs >= 1");
  }
  SchedulerState state;
  state.config = config;
  state.current_lr = config.lr;
  return state;
}

double scheduler_lr(SchedulerState& state, std::size_t step_or_epoch,
                    std::optional<double> validation_loss) {
  const SchedulerConfig& c = state.config;
  switch (c.kind) {
    case SchedulerKind::noam: {
      if (step_or_epoch == 0) throw ArgumentError("noam scheduler steps start at 1");
      const double s = static_cast<double>(step_or_epoch);
      const double w = static_cast<double>(c.warmup_steps);
      state.current_lr = c.lr * std::min(s / w, std::sqrt(w / s));
      break;
    }
    case SchedulerKind::linear: {
      const double frac = static_cast<double>(step_or_epoch) / static_cast<double>(c.decay_epochs);
      state.current_lr = std::max(0.0, c.lr * (1.0 - frac));
      break;
    }
    case SchedulerKind::plateau: {
      if (!validation_loss) throw ArgumentError("plateau scheduler needs a validation loss");
      if (*validation_loss < state.best_validation_loss) {
        state.best_validation_loss = *validation_loss;
        state.bad_validations = 0;
      } else if (++state.bad_validations > c.patience) {
        state.current_lr *= c.factor;
        state.bad_validations = 0;
      }
      break;
    }
    case SchedulerKind::constant:
      state.current_lr = c.lr;
      break;
  }
  return std::max(0.0, state.current_lr);
}

}  // namespace ssum::training
