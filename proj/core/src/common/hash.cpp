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

#include "ssum/common/hash.hpp"

#include <charconv>

#include "ssum/common/error.hpp"

namespace ssum {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
}

void Fnv64::update(std::span<const std::byte> bytes) noexcept {
  for (std::byte b : bytes) {
    state_ ^= static_cast<std::uint64_t>(b);
    state_ *= kFnvPrime;
  }
}

void Fnv64::update(std::string_view text) noexcept {
  update(std::as_bytes(std::span<const char>(text.data(), text.size())));
}

std::uint64_t fnv64(std::string_view text) noexcept {
  Fnv64 h;
  h.update(text);
  return h.digest();
}

std::uint64_t fnv64(std::span<const std::byte> bytes) noexcept {
  Fnv64 h;
  h.update(bytes);
  return h.digest();
}

std::string to_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::uint64_t from_hex(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ArgumentError("malformed hex digest: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace ssum
