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

#include "tokenrecon/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

int SentenceRecord::NumSensitive() const {
  return static_cast<int>(std::count(sensitive.begin(), sensitive.end(), true));
}

absl::Status SentenceRecord::Validate() const {
  if (sensitive.size() != tokens.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sentence ", id, ": ", sensitive.size(), " sensitivity flags for ",
        tokens.size(), " tokens"));
  }
  if (!sanitized.has_value()) return absl::OkStatus();
  if (sanitized->size() != tokens.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sentence ", id, ": ", sanitized->size(),
                     " sanitized tokens for ", tokens.size(), " tokens"));
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!sensitive[i] && (*sanitized)[i] != tokens[i]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sentence ", id, ": non-sensitive position ", i,
          " was changed by sanitization"));
    }
  }
  return absl::OkStatus();
}

std::vector<std::string> Tokenize(absl::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) {
      std::string token(text.substr(start, i - start));
      if (lowercase) {
        std::transform(token.begin(), token.end(), token.begin(),
                       [](unsigned char c) { return std::tolower(c); });
      }
      tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

SentenceRecord MakeRecord(int64_t id, absl::string_view text) {
  SentenceRecord record;
  record.id = id;
  record.tokens = Tokenize(text, /*lowercase=*/false);
  record.sensitive.assign(record.tokens.size(), true);
  return record;
}

namespace {

absl::StatusOr<std::vector<std::string>> StringArray(const nlohmann::json& j,
                                                     const char* field) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("\"", field, "\" must be an array of strings"));
  }
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("\"", field, "\" must be an array of strings"));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

absl::StatusOr<SentenceRecord> ParseRecord(absl::string_view json_line) {
  nlohmann::json j = nlohmann::json::parse(json_line, nullptr,
                                           /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("not a JSON object");
  }
  SentenceRecord record;
  auto id = j.find("id");
  if (id == j.end() || !id->is_number_integer()) {
    return absl::InvalidArgumentError("\"id\" must be an integer");
  }
  record.id = id->get<int64_t>();
  auto tokens = j.find("tokens");
  if (tokens == j.end()) {
    return absl::InvalidArgumentError("missing \"tokens\"");
  }
  TOKENRECON_ASSIGN_OR_RETURN(record.tokens, StringArray(*tokens, "tokens"));
  if (auto s = j.find("sensitive"); s != j.end()) {
    if (!s->is_array()) {
      return absl::InvalidArgumentError(
          "\"sensitive\" must be an array of booleans");
    }
    for (const auto& v : *s) {
      if (!v.is_boolean()) {
        return absl::InvalidArgumentError(
            "\"sensitive\" must be an array of booleans");
      }
      record.sensitive.push_back(v.get<bool>());
    }
  } else {
    record.sensitive.assign(record.tokens.size(), true);
  }
  if (auto s = j.find("sanitized"); s != j.end()) {
    TOKENRECON_ASSIGN_OR_RETURN(record.sanitized, StringArray(*s, "sanitized"));
  }
  TOKENRECON_RETURN_IF_ERROR(record.Validate());
  return record;
}

std::string SerializeRecord(const SentenceRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.id;
  j["tokens"] = record.tokens;
  j["sensitive"] = record.sensitive;
  if (record.sanitized.has_value()) j["sanitized"] = *record.sanitized;
  return j.dump();
}

absl::StatusOr<std::vector<SentenceRecord>> ReadCorpus(std::istream& in) {
  std::vector<SentenceRecord> corpus;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto record = ParseRecord(line);
    if (!record.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "corpus line ", line_number, ": ", record.status().message()));
    }
    corpus.push_back(*std::move(record));
  }
  return corpus;
}

absl::StatusOr<std::vector<SentenceRecord>> ReadCorpusFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  auto corpus = ReadCorpus(in);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        absl::StrCat(path, ": ", corpus.status().message()));
  }
  return corpus;
}

void WriteCorpus(const std::vector<SentenceRecord>& corpus, std::ostream& out) {
  for (const SentenceRecord& record : corpus) {
    out << SerializeRecord(record) << '\n';
  }
}

absl::Status WriteCorpusFile(const std::vector<SentenceRecord>& corpus,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  WriteCorpus(corpus, out);
  out.flush();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<Vocabulary> VocabularyFromCorpus(
    const std::vector<SentenceRecord>& corpus) {
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& t) {
    if (seen.insert(t).second) tokens.push_back(t);
  };
  for (const SentenceRecord& record : corpus) {
    for (const std::string& t : record.tokens) add(t);
    if (record.sanitized) {
      for (const std::string& t : *record.sanitized) add(t);
    }
  }
  return Vocabulary::Create(std::move(tokens));
}

}  // namespace tokenrecon
