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

#include <algorithm>

#include "ssum/common/error.hpp"
#include "ssum/data/dataset.hpp"

namespace ssum::data {

std::string_view to_string(ViewKind kind) {
  switch (kind) {
    case ViewKind::asr: return "asr";
    case ViewKind::tsum: return "tsum";
    case ViewKind::ssum: return "ssum";
    case ViewKind::lm: return "lm";
  }
  return "unknown";
}

ViewKind view_kind_from_string(std::string_view text) {
  for (ViewKind k : {ViewKind::asr, ViewKind::tsum, ViewKind::ssum, ViewKind::lm}) {
    if (to_string(k) == text) return k;
  }
  throw ArgumentError("unknown view kind '" + std::string(text) + "'");
}

std::vector<std::vector<std::size_t>> make_batches(const PairedDataset& dataset,
                                                   std::size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw ArgumentError("make_batches: batch_size must be at least 1");
  std::vector<std::size_t> real, artificial;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (dataset.examples[i].artificial ? artificial : real).push_back(i);
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::vector<std::size_t>* pool : {&real, &artificial}) {
    rng.shuffle(std::span<std::size_t>(*pool));
    for (std::size_t start = 0; start < pool->size(); start += batch_size) {
      const std::size_t stop = std::min(pool->size(), start + batch_size);
      batches.emplace_back(pool->begin() + static_cast<std::ptrdiff_t>(start),
                           pool->begin() + static_cast<std::ptrdiff_t>(stop));
    }
  }
  rng.shuffle(std::span<std::vector<std::size_t>>(batches));
  return batches;
}

bool is_homogeneous(const PairedDataset& dataset, const std::vector<std::size_t>& batch) {
  if (batch.empty()) return true;
  const bool first = dataset.examples.at(batch.front()).artificial;
  return std::all_of(batch.begin(), batch.end(),
                     [&](std::size_t i) { return dataset.examples.at(i).artificial == first; });
}

}  // namespace ssum::data
