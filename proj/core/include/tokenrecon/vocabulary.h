// Copyright 2026 The tokenrecon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOKENRECON_VOCABULARY_H_
#define TOKENRECON_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <string>
#include "absl/strings/string_view.h"
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace tokenrecon {

// Dense 0-based token index into a Vocabulary.
using TokenId = int32_t;

// Ordered set of distinct, non-empty, whitespace-free token strings. Ids are
// dense and never change after construction.
class Vocabulary {
 public:
  Vocabulary() = default;

  static absl::StatusOr<Vocabulary> Create(std::vector<std::string> tokens);

  // Synthetic vocabularies: "<prefix>0", "<prefix>1", ...
  static Vocabulary Numbered(int size, absl::string_view prefix = "t");

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(TokenId id) const { return tokens_[id]; }

  std::optional<TokenId> Find(absl::string_view token) const;
  // NotFound naming the offending token.
  absl::StatusOr<TokenId> Lookup(absl::string_view token) const;
  absl::StatusOr<std::vector<TokenId>> LookupAll(
      const std::vector<std::string>& tokens) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace tokenrecon

#endif  // TOKENRECON_VOCABULARY_H_
