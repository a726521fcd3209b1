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

#include "ssum/model/parameters.hpp"

#include "ssum/common/error.hpp"

namespace ssum::model {

std::size_t ParameterSet::add(std::string name, Tensor value) {
  if (index_.count(name)) throw ArgumentError("duplicate parameter name '" + name + "'");
  index_.emplace(name, params_.size());
  params_.push_back(Parameter{std::move(name), std::move(value)});
  return params_.size() - 1;
}

std::optional<std::size_t> ParameterSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ParameterSet::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ArgumentError("no parameter named '" + std::string(name) + "'");
}

std::size_t ParameterSet::element_count() const noexcept {
  std::size_t n = 0;
  for (const Parameter& p : params_) n += p.value.size();
  return n;
}

bool is_encoder_parameter(std::string_view name) noexcept { return name.starts_with("encoder."); }
bool is_decoder_parameter(std::string_view name) noexcept { return name.starts_with("decoder."); }

bool bit_equal(const ParameterSet& a, const ParameterSet& b) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !compute::bit_equal(a[i].value, b[i].value)) return false;
  }
  return true;
}

}  // namespace ssum::model
