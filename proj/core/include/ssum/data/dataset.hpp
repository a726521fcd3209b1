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
#include <string>
#include <string_view>
#include <vector>

#include "ssum/common/random.hpp"
#include "ssum/model/seq2seq.hpp"

namespace ssum::data {

/// Which pairing of a triplet a dataset exposes.
enum class ViewKind {
  asr,   ///< features -> transcription
  tsum,  ///< transcription -> summary
  ssum,  ///< features -> summary
  lm,    ///< noised summary text -> original summary text
};

std::string_view to_string(ViewKind kind);
ViewKind view_kind_from_string(std::string_view text);

/// One (source, target) pair. Targets end with <eos>.
struct Example {
  std::string id;
  model::Source source;
  std::vector<int> target;
  /// Rendered by the synthetic voice rather than the corpus voice.
  bool artificial = false;
};

struct PairedDataset {
  ViewKind kind = ViewKind::asr;
  std::vector<Example> examples;

  std::size_t size() const noexcept { return examples.size(); }
  bool empty() const noexcept { return examples.empty(); }
};

/// Shuffled minibatches of example indices. Real and artificial examples
/// are batched separately, then the batch order is shuffled, so every batch
/// is homogeneous.
std::vector<std::vector<std::size_t>> make_batches(const PairedDataset& dataset,
                                                   std::size_t batch_size, Rng& rng);

/// True if the batch holds only real or only artificial examples.
bool is_homogeneous(const PairedDataset& dataset, const std::vector<std::size_t>& batch);

}  // namespace ssum::data
