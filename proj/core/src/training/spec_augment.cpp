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

#include "ssum/training/spec_augment.hpp"

#include <algorithm>

#include "ssum/common/error.hpp"

namespace ssum::training {

compute::Tensor spec_augment(const compute::Tensor& features, const SpecAugmentConfig& config,
                             Rng& rng) {
  if (features.rank() != 2) {
    throw ShapeError("spec_augment expects T x F features, got " +
                     compute::shape_string(features.shape()));
  }
  compute::Tensor out = features;
  const std::size_t frames = features.dim(0), bins = features.dim(1);
  for (std::size_t m = 0; m < config.time_masks; ++m) {
    const std::size_t width = rng.between(0, std::min(config.max_time_width, frames));
    const std::size_t start = rng.index(frames - width + 1);
    for (std::size_t t = start; t < start + width; ++t) {
      std::fill_n(out.data() + t * bins, bins, 0.0);
    }
  }
  for (std::size_t m = 0; m < config.freq_masks; ++m) {
    const std::size_t width = rng.between(0, std::min(config.max_freq_width, bins));
    const std::size_t start = rng.index(bins - width + 1);
    for (std::size_t t = 0; t < frames; ++t) {
      std::fill_n(out.data() + t * bins + start, width, 0.0);
    }
  }
  return out;
}

}  // namespace ssum::training
