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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ssum/compute/tape.hpp"

namespace ssum::model {

using compute::Parameter;
using compute::Shape;
using compute::Tensor;

/// Ordered, name-indexed collection of parameters. Names are unique and
/// hierarchical ("encoder.layers.0.attn.q.weight").
class ParameterSet {
 public:
  std::size_t add(std::string name, Tensor value);

  std::size_t size() const noexcept { return params_.size(); }
  Parameter& operator[](std::size_t i) { return params_[i]; }
  const Parameter& operator[](std::size_t i) const { return params_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ArgumentError naming the missing parameter.
  std::size_t index_of(std::string_view name) const;

  /// Total number of scalar values.
  std::size_t element_count() const noexcept;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::vector<Parameter> params_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True for names owned by the encoder (theta_enc plus the relative
/// position table); everything else belongs to the decoder.
bool is_encoder_parameter(std::string_view name) noexcept;
bool is_decoder_parameter(std::string_view name) noexcept;

/// Bitwise equality of names, shapes and values, in order.
bool bit_equal(const ParameterSet& a, const ParameterSet& b) noexcept;

}  // namespace ssum::model
