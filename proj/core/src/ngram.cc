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

#include "tokenrecon/ngram.h"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace tokenrecon {

namespace {

constexpr char kSeparator[] = "\x1f";

std::string Key(std::span<const std::string> tokens) {
  return absl::StrJoin(tokens.begin(), tokens.end(), kSeparator);
}

int64_t Lookup(const std::unordered_map<std::string, int64_t>& map,
               const std::string& key) {
  auto it = map.find(key);
  return it == map.end() ? 0 : it->second;
}

}  // namespace

double NgramScorer::ConditionalProbability(std::span<const std::string> history,
                                           absl::string_view word) const {
  const double v = static_cast<double>(vocabulary_size_);
  std::vector<std::string> gram(history.begin(), history.end());
  gram.emplace_back(word);
  const double numerator =
      static_cast<double>(Lookup(counts_, Key(gram))) + smoothing_;
  const double denominator =
      history.empty()
          ? static_cast<double>(num_tokens_) + smoothing_ * v
          : static_cast<double>(Lookup(history_counts_, Key(history))) +
                smoothing_ * v;
  return numerator / denominator;
}

double NgramScorer::LocalLikelihood(std::span<const std::string> sentence,
                                    size_t position) const {
  const size_t len = sentence.size();
  const size_t n = std::min<size_t>(order_, len);
  if (n <= 1) return ConditionalProbability({}, sentence[position]);
  double likelihood = 1.0;
  const size_t first = position + 1 >= n ? position + 1 - n : 0;
  const size_t last = std::min(position, len - n);
  for (size_t s = first; s <= last; ++s) {
    likelihood *= ConditionalProbability(sentence.subspan(s, n - 1),
                                         sentence[s + n - 1]);
  }
  return likelihood;
}

absl::StatusOr<double> NgramScorer::Score(const ContextWindow& window,
                                          absl::string_view candidate,
                                          absl::string_view /*observed*/) const {
  const std::vector<std::string> substituted = Substitute(window, candidate);
  return LocalLikelihood(substituted, window.position());
}

absl::StatusOr<NgramScorer> NgramTrain(
    const std::vector<SentenceRecord>& corpus, int order, double smoothing) {
  if (order != 2 && order != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("n-gram order must be 2 or 3, got ", order));
  }
  if (!(smoothing > 0.0)) {
    return absl::InvalidArgumentError("n-gram smoothing must be positive");
  }
  NgramScorer model;
  model.order_ = order;
  model.smoothing_ = smoothing;
  std::unordered_set<std::string> types;
  for (const SentenceRecord& record : corpus) {
    if (!record.sanitized.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sentence ", record.id, " has no sanitized tokens to train on"));
    }
    const std::vector<std::string>& s = *record.sanitized;
    const std::span<const std::string> view(s);
    for (size_t i = 0; i < s.size(); ++i) {
      types.insert(s[i]);
      ++model.num_tokens_;
      for (int len = 1; len <= order && i + len <= s.size(); ++len) {
        ++model.counts_[Key(view.subspan(i, len))];
        if (len >= 2) ++model.history_counts_[Key(view.subspan(i, len - 1))];
      }
    }
  }
  if (model.num_tokens_ == 0) {
    return absl::InvalidArgumentError("cannot train an n-gram model on an "
                                      "empty corpus");
  }
  model.vocabulary_size_ = static_cast<int64_t>(types.size()) + 1;
  return model;
}

}  // namespace tokenrecon
