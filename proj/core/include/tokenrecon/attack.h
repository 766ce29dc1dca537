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

#ifndef TOKENRECON_ATTACK_H_
#define TOKENRECON_ATTACK_H_

#include <cmath>
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// Unnormalized posterior Pr(y|x) * mass(x), kept in log space. Pr(y) is
// constant in x and is never computed.
struct PosteriorScore {
  TokenId token;
  double log_score;

  double score() const { return std::exp(log_score); }
};

// Strict ordering used by every argmax and top-K: higher score first, then
// lower token id.
inline bool RanksBefore(const PosteriorScore& a, const PosteriorScore& b) {
  if (a.log_score != b.log_score) return a.log_score > b.log_score;
  return a.token < b.token;
}

// Context-free Bayesian reconstruction: argmax over x of
// Pr(y|x) * mass(x). With an exact prior this is the optimal context-free
// attack; with a shadow-smoothed prior it is the practical attack.
// FailedPrecondition if no x can produce y.
absl::StatusOr<TokenId> ReconstructContextFree(TokenId y,
                                               const Channel& channel,
                                               const PriorModel& prior);

// All vocabulary tokens ranked by posterior score. Tokens that cannot
// produce y come last with a score of -inf, in id order.
std::vector<PosteriorScore> RankCandidates(TokenId y, const Channel& channel,
                                           const PriorModel& prior);

// The K best tokens in rank order (all of them when K >= |X|). K must be >= 1.
absl::StatusOr<std::vector<TokenId>> TopKCandidates(TokenId y, int k,
                                                    const Channel& channel,
                                                    const PriorModel& prior);

// Nearest candidate to y's embedding, ties by lower id.
absl::StatusOr<TokenId> EmbeddingInversion(
    TokenId y, const EmbeddingTable& embeddings,
    std::span<const TokenId> candidates,
    DistanceMetric metric = DistanceMetric::kEuclidean);

// Same, over the whole vocabulary.
TokenId EmbeddingInversion(TokenId y, const EmbeddingTable& embeddings,
                           DistanceMetric metric = DistanceMetric::kEuclidean);

}  // namespace tokenrecon

#endif  // TOKENRECON_ATTACK_H_
