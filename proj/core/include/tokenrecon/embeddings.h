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

#ifndef TOKENRECON_EMBEDDINGS_H_
#define TOKENRECON_EMBEDDINGS_H_

#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

enum class DistanceMetric { kEuclidean, kManhattan };

double Distance(std::span<const double> a, std::span<const double> b,
                DistanceMetric metric = DistanceMetric::kEuclidean);

// One vector per vocabulary token, stored row-major.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // `values` holds `num_tokens * dim` entries, row `i` belonging to token `i`.
  static absl::StatusOr<EmbeddingTable> Create(int dim,
                                               std::vector<double> values);

  int dim() const { return dim_; }
  int num_tokens() const {
    return dim_ == 0 ? 0 : static_cast<int>(values_.size()) / dim_;
  }
  std::span<const double> vector(TokenId id) const {
    return {values_.data() + static_cast<size_t>(id) * dim_,
            static_cast<size_t>(dim_)};
  }
  double distance(TokenId a, TokenId b,
                  DistanceMetric metric = DistanceMetric::kEuclidean) const {
    return Distance(vector(a), vector(b), metric);
  }

 private:
  int dim_ = 0;
  std::vector<double> values_;
};

// Text embedding format: optional header "<count> <dim>", then one
// "<token> <f1> ... <fD>" line per token. Tokens absent from `vocab` are
// skipped. Errors name the 1-based line number or the missing token.
absl::StatusOr<EmbeddingTable> LoadEmbeddings(std::istream& source,
                                              const Vocabulary& vocab);

// Reads every line of the file and uses the file order as the vocabulary.
absl::StatusOr<std::pair<Vocabulary, EmbeddingTable>> LoadEmbeddingFile(
    const std::string& path);

void WriteEmbeddings(const Vocabulary& vocab, const EmbeddingTable& table,
                     std::ostream& out);

}  // namespace tokenrecon

#endif  // TOKENRECON_EMBEDDINGS_H_
