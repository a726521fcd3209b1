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

#include "ssum/training/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssum/common/error.hpp"

namespace ssum::training {

using compute::Tensor;

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ArgumentError("label smoothing epsilon " + std::to_string(epsilon) + " outside [0, 1)");
  }
}

std::size_t counted_positions(std::span<const int> targets, int pad_id) {
  return static_cast<std::size_t>(
      std::count_if(targets.begin(), targets.end(), [pad_id](int t) { return t != pad_id; }));
}

}  // namespace

Tensor smoothed_targets(std::span<const int> targets, std::size_t vocab_size, double epsilon,
                        int ignore_id) {
  check_epsilon(epsilon);
  Tensor out(compute::Shape{targets.size(), vocab_size});
  const double floor = epsilon / static_cast<double>(vocab_size);
  for (std::size_t l = 0; l < targets.size(); ++l) {
    const int y = targets[l];
    if (y == ignore_id) continue;
    if (y < 0 || static_cast<std::size_t>(y) >= vocab_size) {
      throw ArgumentError("target id " + std::to_string(y) + " outside vocabulary of " +
                          std::to_string(vocab_size));
    }
    for (std::size_t k = 0; k < vocab_size; ++k) out[l * vocab_size + k] = floor;
    out[l * vocab_size + static_cast<std::size_t>(y)] += 1.0 - epsilon;
  }
  return out;
}

double label_smoothed_ce(const Tensor& distributions, std::span<const int> targets, double epsilon,
                         int pad_id) {
  check_epsilon(epsilon);
  if (distributions.rank() != 2 || distributions.dim(0) != targets.size()) {
    throw ShapeError("label_smoothed_ce: distributions " +
                     compute::shape_string(distributions.shape()) + " for " +
                     std::to_string(targets.size()) + " targets");
  }
  const std::size_t vocab = distributions.dim(1);
  const Tensor weights = smoothed_targets(targets, vocab, epsilon, pad_id);
  const std::size_t count = counted_positions(targets, pad_id);
  if (count == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    total += weights[i] * std::log(std::max(distributions[i], 1e-12));
  }
  return -total / static_cast<double>(count);
}

compute::Var label_smoothed_ce(compute::Var logits, std::span<const int> targets, double epsilon,
                               int pad_id) {
  const Tensor& lv = logits.value();
  if (lv.rank() != 2 || lv.dim(0) != targets.size()) {
    throw ShapeError("label_smoothed_ce: logits " + compute::shape_string(lv.shape()) + " for " +
                     std::to_string(targets.size()) + " targets");
  }
  const std::size_t count = counted_positions(targets, pad_id);
  if (count == 0) throw ArgumentError("label_smoothed_ce: every target is padding");
  compute::Tape& tape = *logits.tape();
  compute::Var weights = tape.constant(smoothed_targets(targets, lv.dim(1), epsilon, pad_id));
  compute::Var weighted = compute::mul(compute::log_softmax(logits), weights);
  return compute::scale(compute::sum(weighted), -1.0 / static_cast<double>(count));
}

}  // namespace ssum::training
