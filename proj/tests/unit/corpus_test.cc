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

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_join.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"

namespace tokenrecon {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;
using testing::MakeVocab;

TEST(TokenizeTest, SplitsOnWhitespaceRuns) {
  EXPECT_THAT(Tokenize("a b  a", false), ElementsAre("a", "b", "a"));
}

TEST(TokenizeTest, EmptyInput) { EXPECT_THAT(Tokenize("", true), IsEmpty()); }

TEST(TokenizeTest, Lowercases) {
  EXPECT_THAT(Tokenize("The cat The", true), ElementsAre("the", "cat", "the"));
  EXPECT_THAT(Tokenize("The cat", false), ElementsAre("The", "cat"));
}

TEST(TokenizeTest, JoinRoundTripIsIdentity) {
  RngStream rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> tokens;
    const int n = static_cast<int>(rng.NextBelow(8));
    for (int i = 0; i < n; ++i) {
      std::string t;
      const int len = 1 + static_cast<int>(rng.NextBelow(5));
      for (int c = 0; c < len; ++c) t += static_cast<char>('!' + rng.NextBelow(90));
      tokens.push_back(t);
    }
    const std::string sep = rng.NextBelow(2) ? " " : "\t  ";
    EXPECT_EQ(Tokenize(absl::StrJoin(tokens, sep), false), tokens);
  }
}

TEST(VocabularyTest, DenseIdsAndLookup) {
  auto vocab = MakeVocab({"a", "b", "c"});
  EXPECT_EQ(vocab.size(), 3);
  EXPECT_EQ(*vocab.Lookup("c"), 2);
  EXPECT_EQ(vocab.token(1), "b");
  EXPECT_FALSE(vocab.Find("d").has_value());
  EXPECT_THAT(vocab.Lookup("d").status().message(), HasSubstr("d"));
}

TEST(VocabularyTest, RejectsBadTokens) {
  EXPECT_FALSE(Vocabulary::Create({"a", "a"}).ok());
  EXPECT_FALSE(Vocabulary::Create({""}).ok());
  EXPECT_FALSE(Vocabulary::Create({"a b"}).ok());
}

TEST(CorpusTest, ParsesRecordWithDefaults) {
  auto record = ParseRecord(R"({"id": 7, "tokens": ["a", "b"]})");
  ASSERT_TRUE(record.ok()) << record.status();
  EXPECT_EQ(record->id, 7);
  EXPECT_THAT(record->sensitive, ElementsAre(true, true));
  EXPECT_FALSE(record->sanitized.has_value());
}

TEST(CorpusTest, RejectsInconsistentRecords) {
  EXPECT_FALSE(ParseRecord(R"({"id": 1, "tokens": ["a"], "sensitive": [true, false]})").ok());
  EXPECT_FALSE(ParseRecord(R"({"id": 1, "tokens": ["a", "b"], "sanitized": ["c"]})").ok());
  // Non-sensitive positions must survive sanitization unchanged.
  EXPECT_FALSE(ParseRecord(R"({"id": 1, "tokens": ["a", "b"], "sensitive": [true, false], "sanitized": ["c", "d"]})").ok());
  EXPECT_FALSE(ParseRecord(R"({"tokens": ["a"]})").ok());
  EXPECT_FALSE(ParseRecord("not json").ok());
}

TEST(CorpusTest, JsonlRoundTripPreservesRecords) {
  std::vector<SentenceRecord> corpus = {MakeRecord(1, "a b a"),
                                        MakeRecord(2, "c a")};
  corpus[1].sensitive = {false, true};
  corpus[1].sanitized = std::vector<std::string>{"c", "b"};
  std::stringstream buffer;
  WriteCorpus(corpus, buffer);
  auto parsed = ReadCorpus(buffer);
  ASSERT_TRUE(parsed.ok()) << parsed.status();
  ASSERT_EQ(parsed->size(), 2u);
  for (size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(SerializeRecord((*parsed)[i]), SerializeRecord(corpus[i]));
  }
}

TEST(CorpusTest, ReadErrorsCarryLineNumber) {
  std::stringstream in("{\"id\":1,\"tokens\":[\"a\"]}\n\n{\"id\":2}\n");
  auto parsed = ReadCorpus(in);
  ASSERT_FALSE(parsed.ok());
  EXPECT_THAT(parsed.status().message(), HasSubstr("line 3"));
}

std::vector<SentenceRecord> SmallCorpus() {
  return {MakeRecord(0, "a b a"), MakeRecord(1, "c a")};
}

TEST(PriorTest, ExactModeCounts) {
  auto vocab = MakeVocab({"a", "b", "c"});
  auto prior = EstimatePrior(SmallCorpus(), vocab);
  ASSERT_TRUE(prior.ok()) << prior.status();
  EXPECT_DOUBLE_EQ(prior->Mass(0), 3.0 / 5);
  EXPECT_DOUBLE_EQ(prior->Mass(1), 1.0 / 5);
  EXPECT_DOUBLE_EQ(prior->Mass(2), 1.0 / 5);
  EXPECT_EQ(prior->alpha(), 5);
  EXPECT_EQ(prior->count(0), 3);
}

TEST(PriorTest, ShadowSmoothedAddsInverseAlpha) {
  auto vocab = MakeVocab({"a", "b", "c"});
  PriorOptions options;
  options.mode = PriorMode::kShadowSmoothed;
  auto prior = EstimatePrior(SmallCorpus(), vocab, options);
  ASSERT_TRUE(prior.ok());
  EXPECT_DOUBLE_EQ(prior->Mass(0), 0.8);
  EXPECT_DOUBLE_EQ(prior->Mass(2), 0.4);
}

TEST(PriorTest, UnseenTokenGetsPositiveSmoothedMass) {
  auto vocab = MakeVocab({"a", "b"});
  PriorOptions options;
  options.mode = PriorMode::kShadowSmoothed;
  auto prior = EstimatePrior({MakeRecord(0, "a a")}, vocab, options);
  ASSERT_TRUE(prior.ok());
  EXPECT_DOUBLE_EQ(prior->Mass(1), 0.5);
  EXPECT_GT(prior->LogMass(1), -1e300);
}

TEST(PriorTest, DistinctAlphaMode) {
  auto vocab = MakeVocab({"a", "b", "c", "d"});
  PriorOptions options;
  options.mode = PriorMode::kShadowSmoothed;
  options.alpha_mode = AlphaMode::kDistinct;
  auto prior = EstimatePrior(SmallCorpus(), vocab, options);
  ASSERT_TRUE(prior.ok());
  EXPECT_EQ(prior->alpha(), 3);
  EXPECT_DOUBLE_EQ(prior->Mass(3), 1.0 / 3);
  EXPECT_DOUBLE_EQ(prior->Mass(0), 3.0 / 5 + 1.0 / 3);
}

TEST(PriorTest, UnknownTokenIsRejectedByName) {
  auto vocab = MakeVocab({"a", "b"});
  auto prior = EstimatePrior(SmallCorpus(), vocab);
  ASSERT_FALSE(prior.ok());
  EXPECT_THAT(prior.status().message(), HasSubstr("c"));
}

// Random corpora over a small vocabulary, used by the invariants below.
std::vector<SentenceRecord> RandomCorpus(RngStream& rng, int vocab_size) {
  std::vector<SentenceRecord> corpus;
  const int sentences = 1 + static_cast<int>(rng.NextBelow(6));
  for (int s = 0; s < sentences; ++s) {
    SentenceRecord r;
    r.id = s;
    const int len = 1 + static_cast<int>(rng.NextBelow(7));
    for (int i = 0; i < len; ++i) {
      r.tokens.push_back("w" + std::to_string(rng.NextBelow(vocab_size)));
    }
    r.sensitive.assign(len, true);
    corpus.push_back(r);
  }
  return corpus;
}

TEST(PriorTest, InvariantsOnRandomCorpora) {
  RngStream rng(11);
  const Vocabulary vocab = Vocabulary::Numbered(6, "w");
  PriorOptions smoothed;
  smoothed.mode = PriorMode::kShadowSmoothed;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SentenceRecord> corpus = RandomCorpus(rng, vocab.size());
    auto exact = EstimatePrior(corpus, vocab);
    auto shadow = EstimatePrior(corpus, vocab, smoothed);
    ASSERT_TRUE(exact.ok() && shadow.ok());
    double sum = 0.0;
    for (TokenId x = 0; x < vocab.size(); ++x) {
      sum += exact->Probability(x);
      EXPECT_GE(shadow->Mass(x), 1.0 / shadow->alpha());
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);

    // Permuting sentences and positions leaves the prior unchanged.
    std::vector<SentenceRecord> permuted = corpus;
    std::reverse(permuted.begin(), permuted.end());
    for (auto& r : permuted) std::reverse(r.tokens.begin(), r.tokens.end());
    auto again = EstimatePrior(permuted, vocab);
    for (TokenId x = 0; x < vocab.size(); ++x) {
      EXPECT_EQ(again->count(x), exact->count(x));
    }
  }
}

TEST(EmbeddingsTest, LoadsTextFormat) {
  std::stringstream in("a 0.0 1.0\nb 1.0 0.0\n");
  auto table = LoadEmbeddings(in, MakeVocab({"a", "b"}));
  ASSERT_TRUE(table.ok()) << table.status();
  EXPECT_EQ(table->dim(), 2);
  EXPECT_DOUBLE_EQ(table->vector(1)[0], 1.0);
  EXPECT_NEAR(table->distance(0, 1), std::sqrt(2.0), 1e-15);
}

TEST(EmbeddingsTest, SkipsHeaderAndUnknownTokens) {
  std::stringstream in("3 2\nz 5 5\na 0 1\nb 1 0\n");
  auto table = LoadEmbeddings(in, MakeVocab({"b", "a"}));
  ASSERT_TRUE(table.ok()) << table.status();
  EXPECT_DOUBLE_EQ(table->vector(0)[0], 1.0);
  EXPECT_EQ(table->num_tokens(), 2);
}

TEST(EmbeddingsTest, MissingToken) {
  std::stringstream in("a 0.0 1.0\nb 1.0 0.0\n");
  auto table = LoadEmbeddings(in, MakeVocab({"a", "b", "c"}));
  ASSERT_FALSE(table.ok());
  EXPECT_EQ(table.status().message(), "missing embedding: c");
}

TEST(EmbeddingsTest, MalformedLineReportsLineNumber) {
  std::stringstream in("a x y\n");
  auto table = LoadEmbeddings(in, MakeVocab({"a"}));
  ASSERT_FALSE(table.ok());
  EXPECT_THAT(table.status().message(), HasSubstr("line 1"));
}

TEST(EmbeddingsTest, DimensionMismatch) {
  std::stringstream in("a 0 1\nb 1\n");
  auto table = LoadEmbeddings(in, MakeVocab({"a", "b"}));
  ASSERT_FALSE(table.ok());
  EXPECT_THAT(table.status().message(), HasSubstr("line 2"));
}

TEST(EmbeddingsTest, DistanceIsAMetric) {
  RngStream rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(4), b(4);
    for (double& v : a) v = rng.NextGaussian();
    for (double& v : b) v = rng.NextGaussian();
    EXPECT_DOUBLE_EQ(Distance(a, b), Distance(b, a));
    EXPECT_GT(Distance(a, b), 0.0);
    EXPECT_EQ(Distance(a, a), 0.0);
  }
}

}  // namespace
}  // namespace tokenrecon
