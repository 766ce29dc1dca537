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

#include "tokenrecon/embeddings.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

double Distance(std::span<const double> a, std::span<const double> b,
                DistanceMetric metric) {
  double acc = 0.0;
  switch (metric) {
    case DistanceMetric::kEuclidean:
      for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    case DistanceMetric::kManhattan:
      for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
  }
  return acc;
}

absl::StatusOr<EmbeddingTable> EmbeddingTable::Create(
    int dim, std::vector<double> values) {
  if (dim <= 0) return absl::InvalidArgumentError("embedding dim must be > 0");
  if (values.size() % dim != 0) {
    return absl::InvalidArgumentError(
        "embedding values are not a multiple of dim");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("non-finite embedding value");
    }
  }
  EmbeddingTable table;
  table.dim_ = dim;
  table.values_ = std::move(values);
  return table;
}

namespace {

struct ParsedLine {
  std::string token;
  std::vector<double> values;
};

std::vector<absl::string_view> Fields(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
}

std::optional<double> ParseDouble(absl::string_view s) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

std::optional<long long> ParseInt(absl::string_view s) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Reads all lines, detecting and skipping a "<count> <dim>" header. A first
// line of two integers counts as a header when the next line has dim + 1
// fields (or there is no next line).
absl::StatusOr<std::vector<ParsedLine>> ParseEmbeddingLines(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.emplace_back(line_number, line);
  }
  size_t first = 0;
  std::optional<long long> header_dim;
  if (!lines.empty()) {
    auto fields = Fields(lines[0].second);
    if (fields.size() == 2) {
      auto count = ParseInt(fields[0]);
      auto dim = ParseInt(fields[1]);
      if (count && dim && *count >= 0 && *dim > 0 &&
          (lines.size() == 1 ||
           Fields(lines[1].second).size() == static_cast<size_t>(*dim) + 1)) {
        header_dim = dim;
        first = 1;
      }
    }
  }
  std::vector<ParsedLine> parsed;
  size_t dim = header_dim ? static_cast<size_t>(*header_dim) : 0;
  for (size_t i = first; i < lines.size(); ++i) {
    const auto& [number, text] = lines[i];
    auto fields = Fields(text);
    if (fields.size() < 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("embedding line ", number, ": expected a token and ",
                       "at least one value"));
    }
    ParsedLine entry;
    entry.token = std::string(fields[0]);
    for (size_t f = 1; f < fields.size(); ++f) {
      auto value = ParseDouble(fields[f]);
      if (!value) {
        return absl::InvalidArgumentError(
            absl::StrCat("embedding line ", number, ": non-numeric value \"",
                         fields[f], "\""));
      }
      entry.values.push_back(*value);
    }
    if (dim == 0) dim = entry.values.size();
    if (entry.values.size() != dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "embedding line ", number, ": dimension mismatch (expected ", dim,
          ", got ", entry.values.size(), ")"));
    }
    parsed.push_back(std::move(entry));
  }
  return parsed;
}

}  // namespace

absl::StatusOr<EmbeddingTable> LoadEmbeddings(std::istream& source,
                                              const Vocabulary& vocab) {
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<ParsedLine> lines,
                              ParseEmbeddingLines(source));
  if (lines.empty()) return absl::InvalidArgumentError("empty embedding file");
  const int dim = static_cast<int>(lines.front().values.size());
  std::vector<const ParsedLine*> by_id(vocab.size(), nullptr);
  for (const ParsedLine& line : lines) {
    if (auto id = vocab.Find(line.token)) by_id[*id] = &line;
  }
  std::vector<double> values;
  values.reserve(static_cast<size_t>(vocab.size()) * dim);
  for (TokenId id = 0; id < vocab.size(); ++id) {
    if (by_id[id] == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("missing embedding: ", vocab.token(id)));
    }
    values.insert(values.end(), by_id[id]->values.begin(),
                  by_id[id]->values.end());
  }
  return EmbeddingTable::Create(dim, std::move(values));
}

absl::StatusOr<std::pair<Vocabulary, EmbeddingTable>> LoadEmbeddingFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  auto lines = ParseEmbeddingLines(in);
  if (!lines.ok()) {
    return absl::Status(lines.status().code(),
                        absl::StrCat(path, ": ", lines.status().message()));
  }
  if (lines->empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": empty embedding file"));
  }
  std::vector<std::string> tokens;
  std::vector<double> values;
  for (ParsedLine& line : *lines) {
    tokens.push_back(std::move(line.token));
    values.insert(values.end(), line.values.begin(), line.values.end());
  }
  const int dim = static_cast<int>(lines->front().values.size());
  TOKENRECON_ASSIGN_OR_RETURN(Vocabulary vocab,
                              Vocabulary::Create(std::move(tokens)));
  TOKENRECON_ASSIGN_OR_RETURN(EmbeddingTable table,
                              EmbeddingTable::Create(dim, std::move(values)));
  return std::make_pair(std::move(vocab), std::move(table));
}

void WriteEmbeddings(const Vocabulary& vocab, const EmbeddingTable& table,
                     std::ostream& out) {
  out << vocab.size() << ' ' << table.dim() << '\n';
  char buf[64];
  for (TokenId id = 0; id < vocab.size(); ++id) {
    out << vocab.token(id);
    for (double v : table.vector(id)) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out << ' ' << absl::string_view(buf, ptr - buf);
    }
    out << '\n';
  }
}

}  // namespace tokenrecon
