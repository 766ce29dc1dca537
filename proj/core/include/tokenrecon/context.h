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

#ifndef TOKENRECON_CONTEXT_H_
#define TOKENRECON_CONTEXT_H_

#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// A sanitized sentence with one position under attack. The context c is every
// token except `position`. The window does not own the sentence.
class ContextWindow {
 public:
  static absl::StatusOr<ContextWindow> Create(
      std::span<const std::string> sentence, size_t position);

  std::span<const std::string> sentence() const { return sentence_; }
  size_t position() const { return position_; }
  const std::string& observed() const { return sentence_[position_]; }

 private:
  ContextWindow(std::span<const std::string> sentence, size_t position)
      : sentence_(sentence), position_(position) {}

  std::span<const std::string> sentence_;
  size_t position_ = 0;
};

// f(c, t): the sentence with the attacked position replaced by `token`.
std::vector<std::string> Substitute(const ContextWindow& window,
                                    absl::string_view token);

// Supplies a non-negative score proportional to Pr(c | x', y). Implementations
// must be safe for concurrent calls.
class ContextScorer {
 public:
  virtual ~ContextScorer() = default;

  virtual absl::StatusOr<double> Score(const ContextWindow& window,
                                       absl::string_view candidate,
                                       absl::string_view observed) const = 0;

  // One score per candidate. The default calls Score() in a loop; remote
  // scorers override it to batch.
  virtual absl::StatusOr<std::vector<double>> ScoreBatch(
      const ContextWindow& window, std::span<const std::string> candidates,
      absl::string_view observed) const;
};

// Returns the same value for every input, which turns the contextual attack
// back into the context-free one.
class ConstantScorer final : public ContextScorer {
 public:
  explicit ConstantScorer(double value = 1.0) : value_(value) {}
  absl::StatusOr<double> Score(const ContextWindow&, absl::string_view,
                               absl::string_view) const override {
    return value_;
  }

 private:
  double value_;
};

// Contextual Bayesian reconstruction. Candidates are the top-K tokens by
// Pr(y|x) * mass(x); among them the one maximizing
// Pr(y|x) * mass(x) * score(c, x, y) wins, ties by lower id. `window` must
// observe vocab.token(y) at its position.
absl::StatusOr<TokenId> ReconstructContextual(TokenId y,
                                              const ContextWindow& window,
                                              const Vocabulary& vocab,
                                              const Channel& channel,
                                              const PriorModel& prior,
                                              const ContextScorer& scorer,
                                              int k);

}  // namespace tokenrecon

#endif  // TOKENRECON_CONTEXT_H_
