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

#include "ssum/training/optimizer.hpp"

#include <cmath>
#include <string>

#include "ssum/common/error.hpp"

namespace ssum::training {

OptimizerState make_optimizer_state(const model::ParameterSet& params, AdamConfig config) {
  OptimizerState state;
  state.config = config;
  for (const auto& p : params) {
    state.first_moment.emplace_back(p.value.shape());
    state.second_moment.emplace_back(p.value.shape());
  }
  return state;
}

void adam_step(model::ParameterSet& params, std::span<const compute::Tensor> grads,
               OptimizerState& state, double lr, std::span<const double> lr_scales) {
  if (grads.size() != params.size() || state.first_moment.size() != params.size()) {
    throw ShapeError("adam_step: " + std::to_string(params.size()) + " parameters, " +
                     std::to_string(grads.size()) + " gradients, " +
                     std::to_string(state.first_moment.size()) + " moment slots");
  }
  if (!lr_scales.empty() && lr_scales.size() != params.size()) {
    throw ShapeError("adam_step: lr_scales must have one entry per parameter");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (grads[i].shape() != params[i].value.shape()) {
      throw ShapeError("adam_step: gradient shape " + compute::shape_string(grads[i].shape()) +
                       " for parameter '" + params[i].name + "' of shape " +
                       compute::shape_string(params[i].value.shape()));
    }
    if (!grads[i].all_finite()) {
      throw NonFiniteError("non-finite gradient for parameter '" + params[i].name + "'");
    }
  }

  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double step_lr = lr * (lr_scales.empty() ? 1.0 : lr_scales[i]);
    const double decay = 1.0 - step_lr * c.weight_decay;
    double* p = params[i].value.data();
    double* m = state.first_moment[i].data();
    double* v = state.second_moment[i].data();
    const double* g = grads[i].data();
    const std::size_t n = params[i].value.size();
    for (std::size_t j = 0; j < n; ++j) {
      p[j] *= decay;
      m[j] = c.beta1 * m[j] + (1.0 - c.beta1) * g[j];
      v[j] = c.beta2 * v[j] + (1.0 - c.beta2) * g[j] * g[j];
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      p[j] -= step_lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

double global_norm(std::span<const compute::Tensor> grads) {
  double total = 0.0;
  for (const auto& g : grads) {
    for (double v : g.values()) total += v * v;
  }
  return std::sqrt(total);
}

double clip_global_norm(std::span<compute::Tensor> grads, double max_norm) {
  const double norm = global_norm(grads);
  if (norm > max_norm && norm > 0.0) {
    const double factor = max_norm / norm;
    for (auto& g : grads) {
      for (double& v : g.values()) v *= factor;
    }
  }
  return norm;
}

}  // namespace ssum::training
