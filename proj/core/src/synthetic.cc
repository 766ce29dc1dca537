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

#include "tokenrecon/synthetic.h"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace tokenrecon {

EmbeddingTable RandomEmbeddings(int num_tokens, int dim, double scale,
                                RngStream& rng) {
  std::vector<double> values(static_cast<size_t>(num_tokens) * dim);
  for (double& v : values) v = scale * rng.NextGaussian();
  return *EmbeddingTable::Create(dim, std::move(values));
}

std::vector<double> ZipfProbabilities(int n, double exponent) {
  std::vector<double> p(n);
  for (int r = 0; r < n; ++r) p[r] = 1.0 / std::pow(r + 1.0, exponent);
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= sum;
  return p;
}

int SampleIndex(std::span<const double> probabilities, RngStream& rng) {
  const double u = rng.NextUniform();
  double acc = 0.0;
  for (size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding left u above the final sum; return the last non-zero entry.
  for (size_t i = probabilities.size(); i-- > 0;) {
    if (probabilities[i] > 0.0) return static_cast<int>(i);
  }
  return 0;
}

std::vector<SentenceRecord> SampleIidCorpus(
    std::span<const double> probabilities, const Vocabulary& vocab,
    int num_sentences, int sentence_length, RngStream& rng, int64_t first_id) {
  std::vector<SentenceRecord> corpus(num_sentences);
  for (int s = 0; s < num_sentences; ++s) {
    SentenceRecord& record = corpus[s];
    record.id = first_id + s;
    for (int i = 0; i < sentence_length; ++i) {
      record.tokens.push_back(vocab.token(SampleIndex(probabilities, rng)));
    }
    record.sensitive.assign(sentence_length, true);
  }
  return corpus;
}

MarkovSource RandomMarkovSource(int num_tokens, int branching,
                                double concentration, RngStream& rng) {
  MarkovSource source;
  source.initial.assign(num_tokens, 1.0 / num_tokens);
  source.transitions.resize(num_tokens);
  const double background = (1.0 - concentration) / num_tokens;
  for (int x = 0; x < num_tokens; ++x) {
    std::vector<double>& row = source.transitions[x];
    row.assign(num_tokens, background);
    for (int b = 0; b < branching; ++b) {
      const int next = static_cast<int>(rng.NextBelow(num_tokens));
      row[next] += concentration / branching;
    }
  }
  return source;
}

std::vector<SentenceRecord> SampleMarkovCorpus(const MarkovSource& source,
                                               const Vocabulary& vocab,
                                               int num_sentences,
                                               int sentence_length,
                                               RngStream& rng,
                                               int64_t first_id) {
  std::vector<SentenceRecord> corpus(num_sentences);
  for (int s = 0; s < num_sentences; ++s) {
    SentenceRecord& record = corpus[s];
    record.id = first_id + s;
    int state = SampleIndex(source.initial, rng);
    for (int i = 0; i < sentence_length; ++i) {
      if (i > 0) state = SampleIndex(source.transitions[state], rng);
      record.tokens.push_back(vocab.token(state));
    }
    record.sensitive.assign(sentence_length, true);
  }
  return corpus;
}

}  // namespace tokenrecon
