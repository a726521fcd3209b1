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

#include "ssum/model/vocabulary.hpp"

#include <algorithm>
#include <sstream>

#include "ssum/common/error.hpp"
#include "ssum/common/hash.hpp"

namespace ssum::model {

namespace {
const std::vector<std::string> kReservedTokens{"<pad>", "<sos>", "<eos>", "<mask>"};
}

Vocabulary::Vocabulary() : tokens_(kReservedTokens) { index(); }

Vocabulary::Vocabulary(std::span<const std::string> words) : tokens_(kReservedTokens) {
  tokens_.insert(tokens_.end(), words.begin(), words.end());
  index();
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < kReserved ||
      !std::equal(kReservedTokens.begin(), kReservedTokens.end(), tokens.begin())) {
    throw ArgumentError("vocabulary must start with <pad> <sos> <eos> <mask>");
  }
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.index();
  return v;
}

void Vocabulary::index() {
  ids_.clear();
  Fnv64 h;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const std::string& tok = tokens_[i];
    if (tok.empty() || tok.find_first_of(" \t\n\r") != std::string::npos) {
      throw ArgumentError("vocabulary token '" + tok + "' is empty or contains whitespace");
    }
    if (!ids_.emplace(tok, static_cast<int>(i)).second) {
      throw ArgumentError("duplicate vocabulary token '" + tok + "'");
    }
    h.update(tok);
    h.update(std::string_view("\n"));
  }
  hash_ = h.digest();
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw ArgumentError("token id " + std::to_string(id) + " outside vocabulary of " +
                        std::to_string(tokens_.size()));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::id(std::string_view token) const {
  if (auto found = find(token)) return *found;
  throw ArgumentError("unknown token '" + std::string(token) + "'");
}

std::vector<int> Vocabulary::encode(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::vector<int> ids;
  std::string tok;
  while (in >> tok) ids.push_back(id(tok));
  return ids;
}

std::string Vocabulary::decode(std::span<const int> ids) const {
  std::string out;
  for (int id : ids) {
    if (is_special(id)) continue;
    if (!out.empty()) out += ' ';
    out += token(id);
  }
  return out;
}

}  // namespace ssum::model
