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

#ifndef TOKENRECON_SYNTHETIC_H_
#define TOKENRECON_SYNTHETIC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "tokenrecon/corpus.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// Gaussian N(0, scale^2) embeddings.
EmbeddingTable RandomEmbeddings(int num_tokens, int dim, double scale,
                                RngStream& rng);

// Pr(rank r) proportional to 1 / (r + 1)^exponent.
std::vector<double> ZipfProbabilities(int n, double exponent);

// Draws an index from a discrete distribution by inverse CDF.
int SampleIndex(std::span<const double> probabilities, RngStream& rng);

// Sentences of iid tokens; all positions sensitive. Ids start at `first_id`.
std::vector<SentenceRecord> SampleIidCorpus(
    std::span<const double> probabilities, const Vocabulary& vocab,
    int num_sentences, int sentence_length, RngStream& rng,
    int64_t first_id = 0);

// First-order Markov source with sparse transitions: each token has
// `branching` preferred successors that receive `concentration` of the mass.
struct MarkovSource {
  std::vector<double> initial;
  std::vector<std::vector<double>> transitions;
};

MarkovSource RandomMarkovSource(int num_tokens, int branching,
                                double concentration, RngStream& rng);

std::vector<SentenceRecord> SampleMarkovCorpus(const MarkovSource& source,
                                               const Vocabulary& vocab,
                                               int num_sentences,
                                               int sentence_length,
                                               RngStream& rng,
                                               int64_t first_id = 0);

}  // namespace tokenrecon

#endif  // TOKENRECON_SYNTHETIC_H_
