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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ssum::model {

/// Bijective token <-> id map with four reserved ids at the front.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kSos = 1;
  static constexpr int kEos = 2;
  static constexpr int kMask = 3;
  static constexpr std::size_t kReserved = 4;

  Vocabulary();
  /// Builds <pad>, <sos>, <eos>, <mask> followed by `words` in order.
  explicit Vocabulary(std::span<const std::string> words);

  /// Full token list including the reserved entries, e.g. read back from a
  /// checkpoint. Throws ArgumentError if the reserved tokens are missing or
  /// any token repeats.
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(int id) const;
  std::optional<int> find(std::string_view token) const;
  int id(std::string_view token) const;
  static bool is_special(int id) noexcept { return id >= 0 && id < static_cast<int>(kReserved); }

  /// Whitespace-separated tokens to ids; unknown tokens are an error.
  std::vector<int> encode(std::string_view text) const;
  /// Space-joined tokens, skipping reserved ids.
  std::string decode(std::span<const int> ids) const;

  /// Content hash over the ordered token list.
  std::uint64_t hash() const noexcept { return hash_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  void index();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  std::uint64_t hash_ = 0;
};

}  // namespace ssum::model
