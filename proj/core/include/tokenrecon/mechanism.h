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

#ifndef TOKENRECON_MECHANISM_H_
#define TOKENRECON_MECHANISM_H_

#include <cstdint>
#include <span>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

enum class MechanismKind {
  // Every token may be replaced by any vocabulary token.
  kFullVocab,
  // Every token may be replaced only by its `adjacency_size` nearest tokens.
  kAdjacency,
};

absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name);
absl::string_view MechanismKindName(MechanismKind kind);

struct MechanismConfig {
  double epsilon = 1.0;
  MechanismKind kind = MechanismKind::kFullVocab;
  int adjacency_size = 20;
  uint64_t seed = 0;
  DistanceMetric metric = DistanceMetric::kEuclidean;

  absl::Status Validate(int vocab_size) const;
};

// The sanitization channel Pr(y|x). Row x lists the output tokens reachable
// from x together with their log-probabilities; a column index answers
// "which x can produce y" without scanning every row.
class Channel {
 public:
  struct Row {
    std::vector<TokenId> candidates;
    std::vector<double> logprobs;
  };
  struct Entry {
    TokenId token;
    double logprob;
  };

  Channel() = default;

  // Validates that candidates are in range and unique and that every row sums
  // to 1 within 1e-9.
  static absl::StatusOr<Channel> FromRows(MechanismConfig config,
                                          int vocab_size,
                                          std::vector<Row> rows);

  const MechanismConfig& config() const { return config_; }
  int vocab_size() const { return static_cast<int>(rows_.size()); }
  const Row& row(TokenId x) const { return rows_[x]; }
  // Entries (x, log Pr(y|x)) with Pr(y|x) > 0, ordered by x.
  std::span<const Entry> column(TokenId y) const { return columns_[y]; }

  // log Pr(y|x); -inf when y is not a candidate of x.
  double LogProb(TokenId x, TokenId y) const;
  double Prob(TokenId x, TokenId y) const;

  // Inverse-CDF sampling from row x.
  TokenId Sample(TokenId x, RngStream& rng) const;

 private:
  MechanismConfig config_;
  std::vector<Row> rows_;
  std::vector<std::vector<double>> cdf_;
  std::vector<std::vector<Entry>> columns_;
};

// Exponential mechanism Pr(y|x) proportional to exp(-epsilon * d(x, y) / 2)
// over the candidate set, normalized in log space. Adjacency candidates are
// the `adjacency_size` nearest tokens (x included), ties by lower id.
absl::StatusOr<Channel> BuildChannel(const EmbeddingTable& embeddings,
                                     const MechanismConfig& config);

TokenId SampleOutput(const Channel& channel, TokenId x, RngStream& rng);

// Fills `sanitized` for one record. Position i of sentence `id` draws from
// RngStream::ForPosition(seed, id, i); non-sensitive positions are copied.
absl::StatusOr<SentenceRecord> SanitizeSentence(const SentenceRecord& record,
                                                const Vocabulary& vocab,
                                                const Channel& channel,
                                                uint64_t seed);

// Sanitizes a whole corpus in parallel over sentences. Fails if any record
// already carries a sanitized field.
absl::StatusOr<std::vector<SentenceRecord>> SanitizeCorpus(
    const std::vector<SentenceRecord>& corpus, const Vocabulary& vocab,
    const Channel& channel, uint64_t seed, int threads = 1);

// Metric-DP audit for full-vocab channels: the largest value of
// log Pr(y|x1) - log Pr(y|x2) - epsilon * d(x1, x2) over all triples.
// A correct mechanism yields <= 0 (up to rounding).
absl::StatusOr<double> DpRatioCheck(const Channel& channel,
                                    const EmbeddingTable& embeddings);

}  // namespace tokenrecon

#endif  // TOKENRECON_MECHANISM_H_
