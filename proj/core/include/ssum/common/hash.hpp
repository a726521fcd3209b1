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
#include <span>
#include <string>
#include <string_view>

namespace ssum {

/// Incremental 64-bit FNV-1a hasher used for content hashes and checksums.
class Fnv64 {
 public:
  void update(std::span<const std::byte> bytes) noexcept;
  void update(std::string_view text) noexcept;
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv64(std::string_view text) noexcept;
std::uint64_t fnv64(std::span<const std::byte> bytes) noexcept;

/// Lower-case, zero-padded 16 character hex rendering.
std::string to_hex(std::uint64_t value);

/// Inverse of to_hex; throws ArgumentError on malformed input.
std::uint64_t from_hex(std::string_view text);

}  // namespace ssum
