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

#include "tokenrecon/context.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tokenrecon/attack.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

absl::StatusOr<ContextWindow> ContextWindow::Create(
    std::span<const std::string> sentence, size_t position) {
  if (position >= sentence.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "position ", position, " outside sentence of length ",
        sentence.size()));
  }
  return ContextWindow(sentence, position);
}

std::vector<std::string> Substitute(const ContextWindow& window,
                                    absl::string_view token) {
  std::vector<std::string> out(window.sentence().begin(),
                               window.sentence().end());
  out[window.position()] = std::string(token);
  return out;
}

absl::StatusOr<std::vector<double>> ContextScorer::ScoreBatch(
    const ContextWindow& window, std::span<const std::string> candidates,
    absl::string_view observed) const {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const std::string& candidate : candidates) {
    TOKENRECON_ASSIGN_OR_RETURN(double s, Score(window, candidate, observed));
    scores.push_back(s);
  }
  return scores;
}

absl::StatusOr<TokenId> ReconstructContextual(TokenId y,
                                              const ContextWindow& window,
                                              const Vocabulary& vocab,
                                              const Channel& channel,
                                              const PriorModel& prior,
                                              const ContextScorer& scorer,
                                              int k) {
  if (y < 0 || y >= vocab.size()) {
    return absl::InvalidArgumentError(absl::StrCat("token id out of range: ", y));
  }
  if (window.observed() != vocab.token(y)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "window observes \"", window.observed(), "\" but attacked token is \"",
        vocab.token(y), "\""));
  }
  if (channel.column(y).empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("unreachable output: no original token produces ",
                     vocab.token(y)));
  }
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<TokenId> candidates,
                              TopKCandidates(y, k, channel, prior));
  std::vector<std::string> names;
  names.reserve(candidates.size());
  for (TokenId x : candidates) names.push_back(vocab.token(x));
  auto scores = scorer.ScoreBatch(window, names, vocab.token(y));
  if (!scores.ok()) {
    return absl::Status(scores.status().code(),
                        absl::StrCat("context scorer failed for \"",
                                     vocab.token(y), "\": ",
                                     scores.status().message()));
  }
  if (scores->size() != candidates.size()) {
    return absl::InternalError("context scorer returned wrong number of scores");
  }
  PosteriorScore best{candidates.front(),
                      -std::numeric_limits<double>::infinity()};
  bool first = true;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const double s = (*scores)[i];
    if (!(s >= 0.0) || !std::isfinite(s)) {
      return absl::InternalError(
          absl::StrCat("context scorer returned invalid score ", s));
    }
    const TokenId x = candidates[i];
    const PosteriorScore candidate{
        x, channel.LogProb(x, y) + prior.LogMass(x) + std::log(s)};
    // Candidates arrive in rank order; among -inf scores keep the earliest,
    // which is the lowest-id reachable token, as the context-free attack does.
    const bool better =
        candidate.log_score > best.log_score ||
        (candidate.log_score == best.log_score &&
         std::isfinite(candidate.log_score) && candidate.token < best.token);
    if (first || better) {
      best = candidate;
      first = false;
    }
  }
  return best.token;
}

}  // namespace tokenrecon
