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

#include <set>
#include <string>

#include "json.hpp"
#include "ssum/common/error.hpp"

namespace ssum::internal {

/// Reads optional keys from a JSON object and rejects keys nobody asked for,
/// so a typo in a config file fails loudly instead of silently using a default.
class KeyReader {
 public:
  KeyReader(const nlohmann::json& j, std::string context) : j_(j), context_(std::move(context)) {
    if (!j_.is_object()) throw ArgumentError(context_ + ": expected a JSON object");
  }

  template <typename T>
  KeyReader& get(const char* key, T& field) {
    seen_.insert(key);
    if (auto it = j_.find(key); it != j_.end()) {
      try {
        it->get_to(field);
      } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(context_ + "." + key + ": " + e.what());
      }
    }
    return *this;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ArgumentError(context_ + ": unknown key '" + it.key() + "'");
    }
  }

 private:
  const nlohmann::json& j_;
  std::string context_;
  std::set<std::string> seen_;
};

}  // namespace ssum::internal
