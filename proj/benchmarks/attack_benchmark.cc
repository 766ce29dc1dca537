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

#include <map>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "tokenrecon/attack.h"
#include "tokenrecon/context.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/ngram.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/synthetic.h"

namespace tokenrecon {
namespace {

struct Fixture {
  explicit Fixture(int n) : vocab(Vocabulary::Numbered(n)) {
    RngStream rng(1);
    embeddings = RandomEmbeddings(n, 16, 1.0, rng);
    MechanismConfig config;
    config.epsilon = 2.0;
    channel = *BuildChannel(embeddings, config);
    auto source = RandomMarkovSource(n, 8, 0.5, rng);
    auto corpus = SampleMarkovCorpus(source, vocab, 200, 12, rng);
    data = *SanitizeCorpus(corpus, vocab, channel, 2);
    PriorOptions options;
    options.mode = PriorMode::kShadowSmoothed;
    prior = *EstimatePrior(corpus, vocab, options);
    ngram = *NgramTrain(data, 2, 0.1);
  }

  Vocabulary vocab;
  EmbeddingTable embeddings;
  Channel channel;
  std::vector<SentenceRecord> data;
  PriorModel prior;
  NgramScorer ngram;
};

const Fixture& Shared(int n) {
  static auto* fixtures = new std::map<int, Fixture>();
  auto it = fixtures->find(n);
  if (it == fixtures->end()) it = fixtures->emplace(n, Fixture(n)).first;
  return it->second;
}

void BM_BuildChannel(benchmark::State& state) {
  RngStream rng(3);
  const int n = static_cast<int>(state.range(0));
  const EmbeddingTable embeddings = RandomEmbeddings(n, 16, 1.0, rng);
  MechanismConfig config;
  config.epsilon = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildChannel(embeddings, config));
  }
}
BENCHMARK(BM_BuildChannel)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ContextFree(benchmark::State& state) {
  const Fixture& f = Shared(static_cast<int>(state.range(0)));
  TokenId y = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ReconstructContextFree(y, f.channel, f.prior));
    y = (y + 1) % f.vocab.size();
  }
}
BENCHMARK(BM_ContextFree)->Arg(100)->Arg(500);

void BM_Contextual(benchmark::State& state) {
  const Fixture& f = Shared(static_cast<int>(state.range(0)));
  const int k = static_cast<int>(state.range(1));
  size_t s = 0;
  for (auto _ : state) {
    const std::vector<std::string>& seq = *f.data[s].sanitized;
    auto window = *ContextWindow::Create(seq, seq.size() / 2);
    const TokenId y = *f.vocab.Lookup(window.observed());
    benchmark::DoNotOptimize(ReconstructContextual(
        y, window, f.vocab, f.channel, f.prior, f.ngram, k));
    s = (s + 1) % f.data.size();
  }
}
BENCHMARK(BM_Contextual)->Args({500, 1})->Args({500, 10})->Args({500, 50});

void BM_Sanitize(benchmark::State& state) {
  const Fixture& f = Shared(500);
  std::vector<SentenceRecord> originals = f.data;
  for (SentenceRecord& r : originals) r.sanitized.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SanitizeCorpus(originals, f.vocab, f.channel, 5));
  }
  state.SetItemsProcessed(state.iterations() * 200 * 12);
}
BENCHMARK(BM_Sanitize)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tokenrecon

BENCHMARK_MAIN();
