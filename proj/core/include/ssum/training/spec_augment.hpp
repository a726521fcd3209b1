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

#include "ssum/common/random.hpp"
#include "ssum/compute/tensor.hpp"

namespace ssum::training {

struct SpecAugmentConfig {
  std::size_t time_masks = 2;
  std::size_t max_time_width = 10;
  std::size_t freq_masks = 2;
  std::size_t max_freq_width = 4;
};

/// Zeroes `time_masks` bands of whole frames and `freq_masks` bands of
/// feature bins in a T x F matrix. Widths are uniform in [0, max], clipped
/// to the axis length; placements are uniform. Everything outside the bands
/// is left untouched.
compute::Tensor spec_augment(const compute::Tensor& features, const SpecAugmentConfig& config, Rng& rng);

}  // namespace ssum::training
