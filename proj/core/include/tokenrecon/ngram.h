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

#ifndef TOKENRECON_NGRAM_H_
#define TOKENRECON_NGRAM_H_

#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/context.h"
#include "tokenrecon/corpus.h"

namespace tokenrecon {

// Additive-smoothed n-gram model over sanitized text. Scores a candidate by
// the probability of the n-grams of f(c, x') that cover the attacked position;
// the remaining n-grams are identical for every candidate, so the score is
// proportional to the full sentence likelihood. The observed token y is not
// used. Sentences shorter than the order fall back to the longest n-gram
// that fits (a single-token sentence is scored by its unigram probability).
class NgramScorer final : public ContextScorer {
 public:
  int order() const { return order_; }
  double smoothing() const { return smoothing_; }
  // Distinct training types plus one bucket for unseen tokens.
  int64_t vocabulary_size() const { return vocabulary_size_; }

  // Pr(word | history) with add-delta smoothing; an empty history gives the
  // unigram probability.
  double ConditionalProbability(std::span<const std::string> history,
                                absl::string_view word) const;

  // Product of the conditional probabilities of every n-gram of `sentence`
  // that covers `position`.
  double LocalLikelihood(std::span<const std::string> sentence,
                         size_t position) const;

  absl::StatusOr<double> Score(const ContextWindow& window,
                               absl::string_view candidate,
                               absl::string_view observed) const override;

 private:
  friend absl::StatusOr<NgramScorer> NgramTrain(
      const std::vector<SentenceRecord>&, int, double);

  int order_ = 2;
  double smoothing_ = 0.1;
  int64_t vocabulary_size_ = 1;
  int64_t num_tokens_ = 0;
  // Keys are tokens joined by '\x1f'. `counts_` holds every n-gram of length
  // 1..order; `history_counts_` how often each (n-1)-gram is followed by a
  // token inside the same sentence.
  std::unordered_map<std::string, int64_t> counts_;
  std::unordered_map<std::string, int64_t> history_counts_;
};

// Trains on the "sanitized" sequences of `corpus`. `order` must be 2 or 3 and
// `smoothing` positive.
absl::StatusOr<NgramScorer> NgramTrain(
    const std::vector<SentenceRecord>& corpus, int order,
    double smoothing = 0.1);

}  // namespace tokenrecon

#endif  // TOKENRECON_NGRAM_H_
