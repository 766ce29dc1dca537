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
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/synthetic.h"

namespace tokenrecon {
namespace {

using ::testing::Contains;
using testing::ChannelFromMatrix;
using testing::Line;
using testing::MakeVocab;

MechanismConfig FullVocab(double epsilon) {
  MechanismConfig config;
  config.epsilon = epsilon;
  return config;
}

// Closed form for two tokens at distance 1: Pr(x|x) = 1 / (1 + exp(-eps/2)).
TEST(BuildChannelTest, TwoTokenClosedForm) {
  auto channel = BuildChannel(Line({0.0, 1.0}), FullVocab(2.0));
  ASSERT_TRUE(channel.ok()) << channel.status();
  EXPECT_NEAR(channel->Prob(0, 0), 0.7310585786300049, 1e-12);
  EXPECT_NEAR(channel->Prob(0, 1), 1.0 - 0.7310585786300049, 1e-12);
  EXPECT_NEAR(channel->Prob(1, 1), 0.7310585786300049, 1e-12);
}

TEST(BuildChannelTest, ZeroBudgetIsUniform) {
  RngStream rng(1);
  auto embeddings = RandomEmbeddings(7, 3, 1.0, rng);
  auto channel = BuildChannel(embeddings, FullVocab(1e-9));
  ASSERT_TRUE(channel.ok());
  for (TokenId x = 0; x < 7; ++x) {
    for (TokenId y = 0; y < 7; ++y) {
      EXPECT_NEAR(channel->Prob(x, y), 1.0 / 7, 1e-6);
    }
  }
}

TEST(BuildChannelTest, LargeBudgetIsIdentityDominant) {
  auto channel = BuildChannel(Line({0.0, 1.0}), FullVocab(200.0));
  ASSERT_TRUE(channel.ok());
  EXPECT_GE(channel->Prob(0, 0), 1.0 - 1e-40);
  // The off-diagonal mass underflows in linear space but not in log space.
  EXPECT_LT(channel->LogProb(0, 1), std::log(1e-40));
  EXPECT_TRUE(std::isfinite(channel->LogProb(0, 1)));
}

TEST(BuildChannelTest, RowsAreNormalized) {
  RngStream rng(2);
  for (double epsilon : {0.1, 1.0, 10.0, 500.0}) {
    auto embeddings = RandomEmbeddings(20, 4, 1.0, rng);
    for (MechanismKind kind : {MechanismKind::kFullVocab,
                               MechanismKind::kAdjacency}) {
      MechanismConfig config = FullVocab(epsilon);
      config.kind = kind;
      config.adjacency_size = 5;
      auto channel = BuildChannel(embeddings, config);
      ASSERT_TRUE(channel.ok());
      for (TokenId x = 0; x < 20; ++x) {
        double sum = 0.0;
        for (double lp : channel->row(x).logprobs) sum += std::exp(lp);
        EXPECT_NEAR(sum, 1.0, 1e-9);
      }
    }
  }
}

TEST(BuildChannelTest, AdjacencyCandidates) {
  // Positions: t0=0, t1=1, t2=1 (tie with t1), t3=5, t4=-1.
  auto embeddings = Line({0.0, 1.0, 1.0, 5.0, -1.0});
  MechanismConfig config = FullVocab(1.0);
  config.kind = MechanismKind::kAdjacency;
  config.adjacency_size = 3;
  auto channel = BuildChannel(embeddings, config);
  ASSERT_TRUE(channel.ok());
  // From t0: itself, then t1, t2, t4 all at distance 1; ties by lower id.
  EXPECT_THAT(channel->row(0).candidates, ::testing::ElementsAre(0, 1, 2));
  for (TokenId x = 0; x < 5; ++x) {
    EXPECT_EQ(channel->row(x).candidates.size(), 3u);
    EXPECT_THAT(channel->row(x).candidates, Contains(x));
  }
  EXPECT_EQ(channel->LogProb(0, 3), -INFINITY);
}

TEST(BuildChannelTest, ConfigErrors) {
  auto embeddings = Line({0.0, 1.0});
  MechanismConfig config = FullVocab(1.0);
  config.kind = MechanismKind::kAdjacency;
  config.adjacency_size = 3;
  EXPECT_EQ(BuildChannel(embeddings, config).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(BuildChannel(embeddings, FullVocab(0.0)).ok());
  EXPECT_FALSE(BuildChannel(embeddings, FullVocab(-1.0)).ok());
}

TEST(BuildChannelTest, RaisingEpsilonRaisesSelfProbability) {
  RngStream rng(4);
  auto embeddings = RandomEmbeddings(15, 3, 1.0, rng);
  std::vector<double> previous(15, 0.0);
  for (double epsilon : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    auto channel = BuildChannel(embeddings, FullVocab(epsilon));
    ASSERT_TRUE(channel.ok());
    for (TokenId x = 0; x < 15; ++x) {
      EXPECT_GT(channel->Prob(x, x), previous[x]);
      previous[x] = channel->Prob(x, x);
    }
  }
}

TEST(FromRowsTest, RejectsUnnormalizedRows) {
  std::vector<Channel::Row> rows(1);
  rows[0].candidates = {0};
  rows[0].logprobs = {std::log(0.5)};
  EXPECT_FALSE(Channel::FromRows({}, 1, rows).ok());
}

TEST(SampleOutputTest, DeterministicRow) {
  Channel channel = ChannelFromMatrix({{0.0, 1.0}, {1.0, 0.0}});
  RngStream rng(9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(SampleOutput(channel, 0, rng), 1);
}

TEST(SampleOutputTest, EmpiricalFrequencyMatchesRow) {
  auto channel = BuildChannel(Line({0.0, 1.0}), FullVocab(2.0));
  ASSERT_TRUE(channel.ok());
  RngStream rng(42);
  int hits = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) hits += SampleOutput(*channel, 0, rng) == 0;
  EXPECT_NEAR(static_cast<double>(hits) / kDraws, 0.7310585786300049, 0.01);
}

TEST(SampleOutputTest, SameSeedSameSequence) {
  RngStream rng0(3);
  auto embeddings = RandomEmbeddings(10, 2, 1.0, rng0);
  auto channel = BuildChannel(embeddings, FullVocab(1.0));
  ASSERT_TRUE(channel.ok());
  RngStream a(77), b(77);
  for (int i = 0; i < 1000; ++i) {
    const TokenId x = i % 10;
    EXPECT_EQ(SampleOutput(*channel, x, a), SampleOutput(*channel, x, b));
  }
}

TEST(SanitizeTest, AllFalseMaskIsIdentity) {
  auto vocab = MakeVocab({"a", "b"});
  Channel channel = ChannelFromMatrix({{0.5, 0.5}, {0.5, 0.5}});
  SentenceRecord record = MakeRecord(0, "a b a");
  record.sensitive = {false, false, false};
  auto out = SanitizeSentence(record, vocab, channel, 1);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(*out->sanitized, record.tokens);
  EXPECT_EQ(out->tokens, record.tokens);
}

TEST(SanitizeTest, HugeEpsilonKeepsTokens) {
  auto vocab = MakeVocab({"a", "b", "c"});
  auto channel = BuildChannel(Line({0.0, 1.0, 2.0}), FullVocab(1000.0));
  ASSERT_TRUE(channel.ok());
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto out = SanitizeSentence(MakeRecord(3, "a b c b a"), vocab, *channel,
                                seed);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(*out->sanitized, out->tokens);
  }
}

TEST(SanitizeTest, MaskSemantics) {
  auto vocab = MakeVocab({"a", "b"});
  Channel channel = ChannelFromMatrix({{0.5, 0.5}, {0.5, 0.5}});
  SentenceRecord record = MakeRecord(0, "a b");
  record.sensitive = {true, false};
  bool saw_a = false, saw_b = false;
  for (uint64_t seed = 0; seed < 64; ++seed) {
    auto out = SanitizeSentence(record, vocab, channel, seed);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ((*out->sanitized)[1], "b");
    saw_a |= (*out->sanitized)[0] == "a";
    saw_b |= (*out->sanitized)[0] == "b";
  }
  EXPECT_TRUE(saw_a && saw_b);
}

TEST(SanitizeTest, Errors) {
  auto vocab = MakeVocab({"a", "b"});
  Channel channel = ChannelFromMatrix({{0.5, 0.5}, {0.5, 0.5}});
  EXPECT_EQ(SanitizeSentence(MakeRecord(0, "a z"), vocab, channel, 1)
                .status()
                .code(),
            absl::StatusCode::kNotFound);
  SentenceRecord done = MakeRecord(0, "a");
  done.sanitized = done.tokens;
  EXPECT_FALSE(SanitizeSentence(done, vocab, channel, 1).ok());
}

TEST(SanitizeTest, CorpusIsDeterministicAndThreadIndependent) {
  RngStream rng(8);
  const Vocabulary vocab = Vocabulary::Numbered(30);
  auto embeddings = RandomEmbeddings(30, 4, 1.0, rng);
  auto channel = BuildChannel(embeddings, FullVocab(2.0));
  ASSERT_TRUE(channel.ok());
  auto corpus = SampleIidCorpus(ZipfProbabilities(30, 1.0), vocab, 40, 9, rng);
  auto serial = SanitizeCorpus(corpus, vocab, *channel, 1234, 1);
  auto parallel = SanitizeCorpus(corpus, vocab, *channel, 1234, 4);
  ASSERT_TRUE(serial.ok() && parallel.ok());
  std::stringstream a, b;
  WriteCorpus(*serial, a);
  WriteCorpus(*parallel, b);
  EXPECT_EQ(a.str(), b.str());
  // Sanitizing a subset reproduces the same per-sentence output.
  std::vector<SentenceRecord> subset(corpus.begin() + 10, corpus.begin() + 12);
  auto partial = SanitizeCorpus(subset, vocab, *channel, 1234);
  ASSERT_TRUE(partial.ok());
  EXPECT_EQ((*partial)[0].sanitized, (*serial)[10].sanitized);
}

// Independent oracle for the audit: enumerate all 8 triples of the
// two-token channel from its closed form.
TEST(DpRatioCheckTest, TwoTokenMatchesEnumeration) {
  const double epsilon = 2.0;
  auto channel = BuildChannel(Line({0.0, 1.0}), FullVocab(epsilon));
  ASSERT_TRUE(channel.ok());
  const double stay = 1.0 / (1.0 + std::exp(-1.0));
  const double p[2][2] = {{stay, 1 - stay}, {1 - stay, stay}};
  double expected = -INFINITY;
  for (int x1 = 0; x1 < 2; ++x1)
    for (int x2 = 0; x2 < 2; ++x2)
      for (int y = 0; y < 2; ++y)
        expected = std::max(expected, std::log(p[x1][y]) -
                                          std::log(p[x2][y]) -
                                          epsilon * std::abs(x1 - x2));
  auto margin = DpRatioCheck(*channel, Line({0.0, 1.0}));
  ASSERT_TRUE(margin.ok());
  EXPECT_NEAR(*margin, expected, 1e-12);
  EXPECT_LE(*margin, 1e-9);
}

TEST(DpRatioCheckTest, CorruptedRowViolates) {
  // Row of t0 made nearly deterministic: Pr(t1|t1)/Pr(t1|t0) = 0.731/0.001
  // is far above exp(2).
  const double stay = 1.0 / (1.0 + std::exp(-1.0));
  Channel channel =
      ChannelFromMatrix({{0.999, 0.001}, {1 - stay, stay}}, 2.0);
  auto margin = DpRatioCheck(channel, Line({0.0, 1.0}));
  ASSERT_TRUE(margin.ok());
  EXPECT_NEAR(*margin, std::log(stay / 0.001) - 2.0, 1e-12);
  EXPECT_GT(*margin, 0.0);
}

TEST(DpRatioCheckTest, SingleTokenHasZeroMargin) {
  auto channel = BuildChannel(Line({3.0}), FullVocab(1.0));
  ASSERT_TRUE(channel.ok());
  EXPECT_EQ(*DpRatioCheck(*channel, Line({3.0})), 0.0);
}

TEST(DpRatioCheckTest, AdjacencyIsNotApplicable) {
  MechanismConfig config = FullVocab(1.0);
  config.kind = MechanismKind::kAdjacency;
  config.adjacency_size = 1;
  auto embeddings = Line({0.0, 1.0});
  auto channel = BuildChannel(embeddings, config);
  ASSERT_TRUE(channel.ok());
  EXPECT_EQ(DpRatioCheck(*channel, embeddings).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(DpRatioCheckTest, RandomFullVocabChannelsPass) {
  RngStream rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.NextBelow(30));
    auto embeddings = RandomEmbeddings(n, 3, 1.0, rng);
    const double epsilon = 0.1 + 10.0 * rng.NextUniform();
    auto channel = BuildChannel(embeddings, FullVocab(epsilon));
    ASSERT_TRUE(channel.ok());
    EXPECT_LE(*DpRatioCheck(*channel, embeddings), 1e-9);
  }
}

}  // namespace
}  // namespace tokenrecon
