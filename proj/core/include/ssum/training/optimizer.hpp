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
#include <span>
#include <vector>

#include "ssum/model/parameters.hpp"

namespace ssum::training {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Decoupled: parameters shrink by (1 - lr * weight_decay) before each
  /// update.
  double weight_decay = 1e-6;
};

/// First/second moment accumulators mirroring a parameter set.
struct OptimizerState {
  AdamConfig config;
  std::vector<compute::Tensor> first_moment;
  std::vector<compute::Tensor> second_moment;
  std::size_t step = 0;
};

OptimizerState make_optimizer_state(const model::ParameterSet& params, AdamConfig config = {});

/// One bias-corrected Adam update. `lr_scales`, when non-empty, holds one
/// multiplier per parameter. Throws NonFiniteError naming the first
/// parameter whose gradient is NaN/Inf; nothing is modified in that case.
void adam_step(model::ParameterSet& params, std::span<const compute::Tensor> grads,
               OptimizerState& state, double lr, std::span<const double> lr_scales = {});

double global_norm(std::span<const compute::Tensor> grads);

/// Rescales gradients so their global L2 norm is at most `max_norm`.
/// Returns the norm before clipping.
double clip_global_norm(std::span<compute::Tensor> grads, double max_norm);

}  // namespace ssum::training
