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

#include <span>

#include "ssum/compute/ops.hpp"

namespace ssum::training {

/// Smoothed one-hot targets: (1 - eps) on the true token plus eps / K on
/// every token. Rows whose target is `ignore_id` are all zero.
compute::Tensor smoothed_targets(std::span<const int> targets, std::size_t vocab_size, double epsilon,
                                 int ignore_id);

/// Label-smoothed cross-entropy over already normalised distributions
/// (L x K), averaged over non-padding positions. log() is clamped at 1e-12.
double label_smoothed_ce(const compute::Tensor& distributions, std::span<const int> targets,
                         double epsilon, int pad_id = 0);

/// The same objective on the tape, computed from logits through a
/// log-softmax. Returns a scalar node.
compute::Var label_smoothed_ce(compute::Var logits, std::span<const int> targets, double epsilon,
                               int pad_id = 0);

}  // namespace ssum::training
