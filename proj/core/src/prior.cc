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

#include "tokenrecon/prior.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tokenrecon {

absl::StatusOr<PriorModel> PriorModel::FromProbabilities(
    std::vector<double> probabilities) {
  if (probabilities.empty()) {
    return absl::InvalidArgumentError("empty prior");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError("prior probabilities must be >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        absl::StrCat("prior probabilities sum to ", sum));
  }
  PriorModel prior;
  prior.probabilities_ = std::move(probabilities);
  prior.FinalizeLogMass();
  return prior;
}

PriorModel PriorModel::Uniform(int vocab_size) {
  return *FromProbabilities(
      std::vector<double>(vocab_size, 1.0 / static_cast<double>(vocab_size)));
}

void PriorModel::FinalizeLogMass() {
  log_mass_.resize(probabilities_.size());
  for (size_t i = 0; i < probabilities_.size(); ++i) {
    const double mass = probabilities_[i] + smoothing_mass_;
    log_mass_[i] = mass > 0.0 ? std::log(mass)
                              : -std::numeric_limits<double>::infinity();
  }
}

absl::StatusOr<PriorModel> EstimatePrior(
    const std::vector<SentenceRecord>& corpus, const Vocabulary& vocab,
    const PriorOptions& options) {
  if (!(options.smoothing >= 0.0) || !std::isfinite(options.smoothing)) {
    return absl::InvalidArgumentError("smoothing multiplier must be >= 0");
  }
  PriorModel prior;
  prior.mode_ = options.mode;
  prior.counts_.assign(vocab.size(), 0);
  for (const SentenceRecord& record : corpus) {
    for (const std::string& token : record.tokens) {
      auto id = vocab.Find(token);
      if (!id) {
        return absl::NotFoundError(absl::StrCat(
            "token not in vocabulary: ", token, " (sentence ", record.id, ")"));
      }
      ++prior.counts_[*id];
    }
  }
  prior.total_ =
      std::accumulate(prior.counts_.begin(), prior.counts_.end(), int64_t{0});
  if (prior.total_ == 0) {
    return absl::InvalidArgumentError("cannot estimate a prior from no tokens");
  }
  if (options.alpha_mode == AlphaMode::kOccurrences) {
    prior.alpha_ = prior.total_;
  } else {
    prior.alpha_ = 0;
    for (int64_t c : prior.counts_) prior.alpha_ += c > 0 ? 1 : 0;
  }
  prior.probabilities_.resize(vocab.size());
  for (int i = 0; i < vocab.size(); ++i) {
    prior.probabilities_[i] = static_cast<double>(prior.counts_[i]) /
                              static_cast<double>(prior.total_);
  }
  if (options.mode == PriorMode::kShadowSmoothed) {
    prior.smoothing_mass_ =
        options.smoothing / static_cast<double>(prior.alpha_);
  }
  prior.FinalizeLogMass();
  return prior;
}

}  // namespace tokenrecon
