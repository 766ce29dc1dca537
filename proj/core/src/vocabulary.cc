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

#include "tokenrecon/vocabulary.h"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tokenrecon {

absl::StatusOr<Vocabulary> Vocabulary::Create(std::vector<std::string> tokens) {
  Vocabulary vocab;
  vocab.index_.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    if (token.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("empty token at index ", i));
    }
    for (char ch : token) {
      if (std::isspace(static_cast<unsigned char>(ch))) {
        return absl::InvalidArgumentError(
            absl::StrCat("token contains whitespace: \"", token, "\""));
      }
    }
    if (!vocab.index_.emplace(token, static_cast<TokenId>(i)).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate token: ", token));
    }
  }
  vocab.tokens_ = std::move(tokens);
  return vocab;
}

Vocabulary Vocabulary::Numbered(int size, absl::string_view prefix) {
  std::vector<std::string> tokens;
  tokens.reserve(size);
  for (int i = 0; i < size; ++i) tokens.push_back(absl::StrCat(prefix, i));
  return *Create(std::move(tokens));
}

std::optional<TokenId> Vocabulary::Find(absl::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<TokenId> Vocabulary::Lookup(absl::string_view token) const {
  if (auto id = Find(token)) return *id;
  return absl::NotFoundError(absl::StrCat("token not in vocabulary: ", token));
}

absl::StatusOr<std::vector<TokenId>> Vocabulary::LookupAll(
    const std::vector<std::string>& tokens) const {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const std::string& token : tokens) {
    auto id = Lookup(token);
    if (!id.ok()) return id.status();
    ids.push_back(*id);
  }
  return ids;
}

}  // namespace tokenrecon
