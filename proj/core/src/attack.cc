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

#include "tokenrecon/attack.h"

#include <algorithm>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tokenrecon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

absl::StatusOr<TokenId> ReconstructContextFree(TokenId y,
                                               const Channel& channel,
                                               const PriorModel& prior) {
  if (y < 0 || y >= channel.vocab_size()) {
    return absl::InvalidArgumentError(absl::StrCat("token id out of range: ", y));
  }
  auto column = channel.column(y);
  if (column.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("unreachable output: no original token produces id ", y));
  }
  // Column entries are ordered by id, so the first strict maximum already
  // carries the lowest id among ties.
  PosteriorScore best{column.front().token, kNegInf};
  bool first = true;
  for (const Channel::Entry& e : column) {
    const PosteriorScore candidate{e.token, e.logprob + prior.LogMass(e.token)};
    if (first || candidate.log_score > best.log_score) {
      best = candidate;
      first = false;
    }
  }
  return best.token;
}

std::vector<PosteriorScore> RankCandidates(TokenId y, const Channel& channel,
                                           const PriorModel& prior) {
  const int n = channel.vocab_size();
  std::vector<PosteriorScore> ranked;
  ranked.reserve(n);
  std::vector<char> reachable(n, 0);
  for (const Channel::Entry& e : channel.column(y)) {
    ranked.push_back({e.token, e.logprob + prior.LogMass(e.token)});
    reachable[e.token] = 1;
  }
  std::sort(ranked.begin(), ranked.end(), RanksBefore);
  for (TokenId x = 0; x < n; ++x) {
    if (!reachable[x]) ranked.push_back({x, kNegInf});
  }
  return ranked;
}

absl::StatusOr<std::vector<TokenId>> TopKCandidates(TokenId y, int k,
                                                    const Channel& channel,
                                                    const PriorModel& prior) {
  if (k < 1) return absl::InvalidArgumentError("K must be >= 1");
  if (y < 0 || y >= channel.vocab_size()) {
    return absl::InvalidArgumentError(absl::StrCat("token id out of range: ", y));
  }
  const size_t want = std::min<size_t>(k, channel.vocab_size());
  auto column = channel.column(y);
  std::vector<PosteriorScore> scored;
  scored.reserve(column.size());
  for (const Channel::Entry& e : column) {
    scored.push_back({e.token, e.logprob + prior.LogMass(e.token)});
  }
  const size_t head = std::min(want, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + head, scored.end(),
                    RanksBefore);
  std::vector<TokenId> out;
  out.reserve(want);
  for (size_t i = 0; i < head; ++i) out.push_back(scored[i].token);
  if (out.size() < want) {
    // Tokens that cannot produce y tie at -inf; fill by id. A reachable token
    // with zero prior mass also scores -inf and keeps its place above them.
    std::vector<char> reachable(channel.vocab_size(), 0);
    for (const Channel::Entry& e : column) reachable[e.token] = 1;
    for (TokenId x = 0; x < channel.vocab_size() && out.size() < want; ++x) {
      if (!reachable[x]) out.push_back(x);
    }
  }
  return out;
}

absl::StatusOr<TokenId> EmbeddingInversion(TokenId y,
                                           const EmbeddingTable& embeddings,
                                           std::span<const TokenId> candidates,
                                           DistanceMetric metric) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("empty candidate set");
  }
  TokenId best = candidates.front();
  double best_distance = std::numeric_limits<double>::infinity();
  for (TokenId x : candidates) {
    const double d = embeddings.distance(x, y, metric);
    if (d < best_distance || (d == best_distance && x < best)) {
      best = x;
      best_distance = d;
    }
  }
  return best;
}

TokenId EmbeddingInversion(TokenId y, const EmbeddingTable& embeddings,
                           DistanceMetric metric) {
  TokenId best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (TokenId x = 0; x < embeddings.num_tokens(); ++x) {
    const double d = embeddings.distance(x, y, metric);
    if (d < best_distance) {
      best = x;
      best_distance = d;
    }
  }
  return best;
}

}  // namespace tokenrecon
