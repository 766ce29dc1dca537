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

#ifndef TOKENRECON_CORPUS_H_
#define TOKENRECON_CORPUS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// One sentence of a corpus. `sensitive[i]` marks positions that belong to the
// attack target; only those positions are ever sanitized or attacked.
struct SentenceRecord {
  int64_t id = 0;
  std::vector<std::string> tokens;
  std::optional<std::vector<std::string>> sanitized;
  std::vector<bool> sensitive;

  size_t size() const { return tokens.size(); }
  int NumSensitive() const;

  // Checks the length and mask invariants.
  absl::Status Validate() const;
};

// Splits on runs of whitespace, optionally lowercasing ASCII letters.
std::vector<std::string> Tokenize(absl::string_view text, bool lowercase);

// Builds a record from raw text with an all-true sensitivity mask.
SentenceRecord MakeRecord(int64_t id, absl::string_view text);

// JSON-lines corpus I/O. One object per line:
//   {"id": int, "tokens": [string], "sensitive": [bool]?, "sanitized": [string]?}
// A missing "sensitive" field means every position is sensitive. Blank lines
// are skipped. Errors carry the 1-based line number.
absl::StatusOr<SentenceRecord> ParseRecord(absl::string_view json_line);
std::string SerializeRecord(const SentenceRecord& record);

absl::StatusOr<std::vector<SentenceRecord>> ReadCorpus(std::istream& in);
absl::StatusOr<std::vector<SentenceRecord>> ReadCorpusFile(
    const std::string& path);
void WriteCorpus(const std::vector<SentenceRecord>& corpus, std::ostream& out);
absl::Status WriteCorpusFile(const std::vector<SentenceRecord>& corpus,
                             const std::string& path);

// Vocabulary over every distinct token (original and sanitized) in first-seen
// order.
absl::StatusOr<Vocabulary> VocabularyFromCorpus(
    const std::vector<SentenceRecord>& corpus);

}  // namespace tokenrecon

#endif  // TOKENRECON_CORPUS_H_
