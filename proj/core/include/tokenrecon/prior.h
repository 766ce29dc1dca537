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

#ifndef TOKENRECON_PRIOR_H_
#define TOKENRECON_PRIOR_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

enum class PriorMode {
  // mass(x) = Pr(x).
  kExact,
  // mass(x) = Pr(x) + smoothing / alpha, where Pr(x) is the shadow frequency.
  kShadowSmoothed,
};

// What alpha counts in the smoothed mode.
enum class AlphaMode { kOccurrences, kDistinct };

struct PriorOptions {
  PriorMode mode = PriorMode::kExact;
  // Multiplier on 1/alpha. 1.0 is the standard attack; other values exist for
  // the smoothing-constant ablation (0 disables smoothing).
  double smoothing = 1.0;
  AlphaMode alpha_mode = AlphaMode::kOccurrences;
};

// Token frequency model Pr(x) over a vocabulary.
class PriorModel {
 public:
  PriorModel() = default;

  // Exact-mode prior from known probabilities (must sum to 1 within 1e-9).
  static absl::StatusOr<PriorModel> FromProbabilities(
      std::vector<double> probabilities);

  // Uniform exact prior.
  static PriorModel Uniform(int vocab_size);

  PriorMode mode() const { return mode_; }
  int size() const { return static_cast<int>(probabilities_.size()); }
  // Zero when the prior was not counted from a corpus.
  int64_t count(TokenId x) const { return counts_.empty() ? 0 : counts_[x]; }
  int64_t total() const { return total_; }
  int64_t alpha() const { return alpha_; }
  double smoothing_mass() const { return smoothing_mass_; }

  double Probability(TokenId x) const { return probabilities_[x]; }
  // The quantity the Bayesian attacks multiply with the likelihood.
  double Mass(TokenId x) const { return probabilities_[x] + smoothing_mass_; }
  // log Mass(x), -inf for zero mass.
  double LogMass(TokenId x) const { return log_mass_[x]; }

 private:
  friend absl::StatusOr<PriorModel> EstimatePrior(
      const std::vector<SentenceRecord>&, const Vocabulary&,
      const PriorOptions&);

  void FinalizeLogMass();

  PriorMode mode_ = PriorMode::kExact;
  std::vector<int64_t> counts_;
  std::vector<double> probabilities_;
  std::vector<double> log_mass_;
  int64_t total_ = 0;
  int64_t alpha_ = 0;
  double smoothing_mass_ = 0.0;
};

// Counts original tokens of `corpus`. Any token outside `vocab` is rejected.
absl::StatusOr<PriorModel> EstimatePrior(
    const std::vector<SentenceRecord>& corpus, const Vocabulary& vocab,
    const PriorOptions& options = {});

}  // namespace tokenrecon

#endif  // TOKENRECON_PRIOR_H_
