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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"
#include "tokenrecon/attack.h"
#include "tokenrecon/context.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/joint.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/ngram.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/synthetic.h"

namespace tokenrecon {
namespace {

using ::testing::ElementsAre;
using testing::ChannelFromMatrix;
using testing::MakeVocab;

// Scores candidates from a fixed table; anything else gets 1.
class TableScorer final : public ContextScorer {
 public:
  explicit TableScorer(std::map<std::string, double> table)
      : table_(std::move(table)) {}
  absl::StatusOr<double> Score(const ContextWindow&, absl::string_view x,
                               absl::string_view) const override {
    auto it = table_.find(std::string(x));
    return it == table_.end() ? 1.0 : it->second;
  }

 private:
  std::map<std::string, double> table_;
};

class FailingScorer final : public ContextScorer {
 public:
  absl::StatusOr<double> Score(const ContextWindow&, absl::string_view,
                               absl::string_view) const override {
    return absl::UnavailableError("backend down");
  }
};

TEST(SubstituteTest, Examples) {
  const std::vector<std::string> s = {"t1", "t2", "t3", "t4"};
  auto window = *ContextWindow::Create(s, 2);
  EXPECT_THAT(Substitute(window, "x"), ElementsAre("t1", "t2", "x", "t4"));
  EXPECT_EQ(Substitute(window, "t3"), s);
  const std::vector<std::string> one = {"t1"};
  EXPECT_THAT(Substitute(*ContextWindow::Create(one, 0), "x"),
              ElementsAre("x"));
  EXPECT_FALSE(ContextWindow::Create(one, 1).ok());
}

class ContextualExampleTest : public ::testing::Test {
 protected:
  Vocabulary vocab_ = MakeVocab({"a", "b", "c"});
  Channel channel_ = ChannelFromMatrix(
      {{0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6}});
  PriorModel prior_ = *PriorModel::FromProbabilities({0.5, 0.3, 0.2});
  std::vector<std::string> sentence_ = {"x", "b", "z"};
};

TEST_F(ContextualExampleTest, ContextFlipsTheAnswer) {
  auto window = *ContextWindow::Create(sentence_, 1);
  TableScorer scorer({{"a", 0.9}, {"b", 0.3}});
  EXPECT_EQ(*ReconstructContextFree(1, channel_, prior_), 1);
  EXPECT_EQ(*ReconstructContextual(1, window, vocab_, channel_, prior_, scorer,
                                   2),
            0);
}

TEST_F(ContextualExampleTest, CandidateSetLimitsTheChoice) {
  auto window = *ContextWindow::Create(sentence_, 1);
  // c is ranked third, so K=2 cannot pick it however high it scores.
  TableScorer scorer({{"c", 100.0}});
  EXPECT_EQ(*ReconstructContextual(1, window, vocab_, channel_, prior_, scorer,
                                   2),
            1);
  EXPECT_EQ(*ReconstructContextual(1, window, vocab_, channel_, prior_, scorer,
                                   3),
            2);
}

TEST_F(ContextualExampleTest, Errors) {
  auto window = *ContextWindow::Create(sentence_, 1);
  ConstantScorer scorer;
  EXPECT_EQ(ReconstructContextual(0, window, vocab_, channel_, prior_, scorer, 2)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  FailingScorer failing;
  auto status =
      ReconstructContextual(1, window, vocab_, channel_, prior_, failing, 2)
          .status();
  EXPECT_EQ(status.code(), absl::StatusCode::kUnavailable);
  EXPECT_THAT(std::string(status.message()), ::testing::HasSubstr("backend"));
}

TEST(ContextualReductionTest, ConstantScorerMatchesContextFree) {
  RngStream rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.NextBelow(9));
    const Vocabulary vocab = Vocabulary::Numbered(n);
    MechanismConfig config;
    config.epsilon = 0.2 + 6.0 * rng.NextUniform();
    if (trial % 2 == 1) {
      config.kind = MechanismKind::kAdjacency;
      config.adjacency_size = 1 + static_cast<int>(rng.NextBelow(n));
    }
    const Channel channel =
        *BuildChannel(RandomEmbeddings(n, 2, 1.0, rng), config);
    auto corpus = SampleIidCorpus(ZipfProbabilities(n, 1.0), vocab, 3, 5, rng);
    PriorOptions options;
    options.mode = PriorMode::kShadowSmoothed;
    const PriorModel prior = *EstimatePrior(corpus, vocab, options);
    ConstantScorer scorer(0.37);
    for (TokenId y = 0; y < n; ++y) {
      if (channel.column(y).empty()) continue;
      std::vector<std::string> s = {"ctx", vocab.token(y)};
      auto window = *ContextWindow::Create(s, 1);
      const TokenId free = *ReconstructContextFree(y, channel, prior);
      EXPECT_EQ(*ReconstructContextual(y, window, vocab, channel, prior,
                                       scorer, n),
                free);
      const auto top = *TopKCandidates(y, 3, channel, prior);
      EXPECT_EQ(*ReconstructContextual(y, window, vocab, channel, prior,
                                       scorer, 3),
                top.front());
    }
  }
}

TEST(ContextualReductionTest, IndependentContextMatchesContextFree) {
  RngStream rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int nx = 2 + static_cast<int>(rng.NextBelow(4));
    const int ny = 2 + static_cast<int>(rng.NextBelow(4));
    const int nc = 1 + static_cast<int>(rng.NextBelow(4));
    const JointDistribution joint =
        RandomIndependentContextJoint(nx, ny, nc, rng);
    const Vocabulary vocab = joint.MakeVocabulary();
    const Channel channel = *joint.MakeChannel();
    const PriorModel prior = *joint.MakePrior();
    ExactJointScorer scorer(joint);
    for (int y = 0; y < ny; ++y) {
      for (int c = 0; c < nc; ++c) {
        const auto s = joint.ObservationSentence(y, c);
        auto window = *ContextWindow::Create(s, 0);
        EXPECT_EQ(*ReconstructContextual(y, window, vocab, channel, prior,
                                         scorer, vocab.size()),
                  *ReconstructContextFree(y, channel, prior));
      }
    }
  }
}

TEST(ContextualReductionTest, ScorerScaleInvariance) {
  RngStream rng(3);
  const JointDistribution joint = RandomJoint(4, 4, 3, rng);
  const Vocabulary vocab = joint.MakeVocabulary();
  const Channel channel = *joint.MakeChannel();
  const PriorModel prior = *joint.MakePrior();
  std::map<std::string, double> base, scaled;
  for (int x = 0; x < 4; ++x) {
    const double v = 0.1 + rng.NextUniform();
    base[vocab.token(x)] = v;
    scaled[vocab.token(x)] = 8.0 * v;
  }
  TableScorer a(base), b(scaled);
  for (int y = 0; y < 4; ++y) {
    const auto s = joint.ObservationSentence(y, 0);
    auto window = *ContextWindow::Create(s, 0);
    EXPECT_EQ(*ReconstructContextual(y, window, vocab, channel, prior, a, 4),
              *ReconstructContextual(y, window, vocab, channel, prior, b, 4));
  }
}

std::vector<SentenceRecord> SanitizedCorpus(
    const std::vector<std::string>& texts) {
  std::vector<SentenceRecord> out;
  for (size_t i = 0; i < texts.size(); ++i) {
    SentenceRecord r = MakeRecord(static_cast<int64_t>(i), texts[i]);
    r.sanitized = r.tokens;
    out.push_back(std::move(r));
  }
  return out;
}

TEST(NgramTest, BigramExampleValues) {
  auto model = NgramTrain(SanitizedCorpus({"a b a b"}), 2, 0.1);
  ASSERT_TRUE(model.ok()) << model.status();
  EXPECT_EQ(model->vocabulary_size(), 3);
  const std::vector<std::string> s = {"a", "?", "a"};
  auto window = *ContextWindow::Create(s, 1);
  const double with_b = *model->Score(window, "b", "?");
  const double with_a = *model->Score(window, "a", "?");
  EXPECT_NEAR(with_b, 0.7725752508361204, 1e-12);
  EXPECT_NEAR(with_a, 0.0018903591682419665, 1e-12);
  EXPECT_GT(with_b, with_a);
}

TEST(NgramTest, UnseenGramsArePositive) {
  auto model = *NgramTrain(SanitizedCorpus({"a b a b", "c d"}), 3, 0.1);
  const std::vector<std::string> s = {"zz", "q", "yy", "a"};
  auto window = *ContextWindow::Create(s, 1);
  EXPECT_GT(*model.Score(window, "never", "q"), 0.0);
  EXPECT_GT(*model.Score(window, "d", "q"), 0.0);
}

TEST(NgramTest, SingleTokenSentenceUsesUnigram) {
  auto model = *NgramTrain(SanitizedCorpus({"a b a b"}), 2, 0.1);
  const std::vector<std::string> s = {"?"};
  auto window = *ContextWindow::Create(s, 0);
  // (2 + 0.1) / (4 + 0.1 * 3)
  EXPECT_NEAR(*model.Score(window, "a", "?"), 2.1 / 4.3, 1e-12);
  EXPECT_NEAR(*model.Score(window, "c", "?"), 0.1 / 4.3, 1e-12);
}

TEST(NgramTest, Errors) {
  EXPECT_FALSE(NgramTrain(SanitizedCorpus({"a b"}), 4, 0.1).ok());
  EXPECT_FALSE(NgramTrain(SanitizedCorpus({"a b"}), 2, 0.0).ok());
  EXPECT_FALSE(NgramTrain({}, 2, 0.1).ok());
  EXPECT_FALSE(NgramTrain({MakeRecord(0, "a b")}, 2, 0.1).ok());
}

TEST(NgramTest, ContextualAttackPrefersFluentCandidate) {
  // Channel is uninformative between a and b; the bigram model trained on
  // alternating text resolves the gap.
  const Vocabulary vocab = MakeVocab({"a", "b"});
  Channel channel = ChannelFromMatrix({{0.5, 0.5}, {0.5, 0.5}});
  const PriorModel prior = PriorModel::Uniform(2);
  auto model = *NgramTrain(SanitizedCorpus({"a b a b a b"}), 2, 0.1);
  const std::vector<std::string> s = {"a", "a", "a"};
  auto window = *ContextWindow::Create(s, 1);
  EXPECT_EQ(*ReconstructContextual(0, window, vocab, channel, prior, model, 2),
            1);
}

}  // namespace
}  // namespace tokenrecon
