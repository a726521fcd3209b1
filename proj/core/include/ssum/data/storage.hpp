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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ssum/data/corpus.hpp"

namespace ssum::data {

/// One line of an id<TAB>text file.
struct IdText {
  std::string id;
  std::string text;
};

/// Lines are "id<TAB>text"; blank lines are skipped. Throws IoError on a
/// line without a tab or a repeated id.
std::vector<IdText> read_id_text(const std::filesystem::path& path);
void write_id_text(const std::filesystem::path& path, const std::vector<IdText>& lines);

/// Binary feature file: little-endian uint32 T, uint32 F, then T*F
/// row-major little-endian IEEE-754 binary32 values.
void write_features(const std::filesystem::path& path, const Tensor& features);
Tensor read_features(const std::filesystem::path& path);

/// Directory layout:
///   corpus.json        config and vocabulary tokens
///   manifest.tsv       id, split, flags
///   transcripts.txt    id<TAB>space-separated tokens
///   summaries.txt      id<TAB>space-separated tokens
///   features/<id>.f32  feature files
void write_corpus(const Corpus& corpus, const std::filesystem::path& dir);

/// Reads a directory written by write_corpus. Templates are rebuilt from
/// the stored config and must reproduce the stored vocabulary.
Corpus read_corpus(const std::filesystem::path& dir);

}  // namespace ssum::data
