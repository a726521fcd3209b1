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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ssum/common/error.hpp"
#include "ssum/model/seq2seq.hpp"

namespace ssum::transfer {

/// Which training produced a checkpoint.
enum class Provenance { asr, lm, ssum, tsum, transferred };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view text);

/// Malformed, truncated, corrupted or inconsistent checkpoint file.
class CheckpointError : public IoError {
 public:
  using IoError::IoError;
};

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  model::Seq2SeqModel model;
  Provenance provenance = Provenance::asr;
  /// Digest of the training log that produced the parameters.
  std::string log_digest;
};

/// File layout:
///   line 1  "SSUMCKPT <version>"
///   line 2  "<header bytes> <payload bytes> <header FNV-1a hex>"
///   header  JSON: config, vocabulary, vocabulary_hash, provenance,
///           log_digest, parameters [{name, shape, offset, count, checksum}]
///   payload little-endian IEEE-754 binary64 values, parameters back to back
/// Written to a temporary file in the same directory, then renamed.
void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);

/// Validates everything before building the model; on any error nothing is
/// returned. Offset, count and shape mismatches name the parameter.
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// FNV-1a of the file bytes, hex.
std::string file_digest(const std::filesystem::path& path);

namespace detail {
/// Writes `checkpoint`'s tensors under a header that declares `declared`
/// instead of the model's own config. Only for producing bad files in tests.
void save_with_declared_config(const Checkpoint& checkpoint, const model::ModelConfig& declared,
                               const std::filesystem::path& path);
}  // namespace detail

}  // namespace ssum::transfer
