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
#include <vector>

#include "gtest/gtest.h"
#include "tokenrecon/joint.h"
#include "tokenrecon/oracle.h"
#include "tokenrecon/rng.h"

namespace tokenrecon {
namespace {

JointDistribution ExampleJoint() {
  JointDistribution joint = ContextFreeJoint(
      {0.5, 0.3, 0.2}, {{0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}, {0.2, 0.2, 0.6}});
  joint.pc.assign(3, std::vector<std::vector<double>>(3));
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      joint.pc[x][y] = x == y ? std::vector<double>{0.8, 0.2}
                              : std::vector<double>{0.3, 0.7};
    }
  }
  return joint;
}

TEST(JointTest, ExampleIsValid) {
  EXPECT_TRUE(ExampleJoint().Validate().ok());
  JointDistribution bad = ExampleJoint();
  bad.px[0] = 0.6;
  EXPECT_FALSE(bad.Validate().ok());
}

TEST(EnumerateTest, ExampleJoint) {
  const JointDistribution joint = ExampleJoint();
  EXPECT_NEAR(*EnumerateBestStrategy(joint, false), 0.6, 1e-12);
  EXPECT_NEAR(*EnumerateBestStrategy(joint, true), 0.68, 1e-12);
  EXPECT_NEAR(*AttackExpectedAccuracy(joint, false), 0.6, 1e-12);
  EXPECT_NEAR(*AttackExpectedAccuracy(joint, true), 0.68, 1e-12);
}

TEST(EnumerateTest, DeterministicChannelIsPerfect) {
  const JointDistribution joint = ContextFreeJoint(
      {0.2, 0.5, 0.3}, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_NEAR(*EnumerateBestStrategy(joint, false), 1.0, 1e-12);
  EXPECT_NEAR(*AttackExpectedAccuracy(joint, false), 1.0, 1e-12);
  const ConditionalEntropy h = ConditionalEntropies(joint);
  EXPECT_NEAR(h.x_given_y, 0.0, 1e-12);
  EXPECT_NEAR(h.x_given_yc, 0.0, 1e-12);
}

TEST(EnumerateTest, UniformIsChance) {
  for (int n = 2; n <= 5; ++n) {
    const JointDistribution joint = ContextFreeJoint(
        std::vector<double>(n, 1.0 / n),
        std::vector<std::vector<double>>(n, std::vector<double>(n, 1.0 / n)));
    EXPECT_NEAR(*EnumerateBestStrategy(joint, false), 1.0 / n, 1e-12);
    EXPECT_NEAR(*AttackExpectedAccuracy(joint, true), 1.0 / n, 1e-12);
  }
}

TEST(EnumerateTest, TooManyStrategies) {
  RngStream rng(1);
  const JointDistribution joint = RandomJoint(4, 4, 4, rng);
  EXPECT_EQ(EnumerateBestStrategy(joint, true).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_TRUE(EnumerateBestStrategy(joint, false).ok());
}

TEST(EntropyTest, ExampleValues) {
  const ConditionalEntropy h = ConditionalEntropies(ExampleJoint());
  EXPECT_NEAR(h.x_given_y, 0.8923579007002609, 1e-12);
  EXPECT_NEAR(h.x_given_yc, 0.7731824508524527, 1e-12);
  EXPECT_LE(h.x_given_yc, h.x_given_y);
}

TEST(EntropyTest, IndependentContextIsUninformative) {
  RngStream rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const JointDistribution joint = RandomIndependentContextJoint(
        2 + static_cast<int>(rng.NextBelow(4)),
        2 + static_cast<int>(rng.NextBelow(4)),
        1 + static_cast<int>(rng.NextBelow(4)), rng);
    const ConditionalEntropy h = ConditionalEntropies(joint);
    EXPECT_NEAR(h.x_given_yc, h.x_given_y, 1e-12);
  }
}

class RandomJointTest : public ::testing::TestWithParam<uint64_t> {};

TEST_P(RandomJointTest, AttacksAreOptimal) {
  RngStream rng(GetParam());
  const int nx = 2 + static_cast<int>(rng.NextBelow(3));
  const int ny = 2 + static_cast<int>(rng.NextBelow(3));
  const int nc = 1 + static_cast<int>(rng.NextBelow(3));
  const JointDistribution joint = RandomJoint(nx, ny, nc, rng);
  ASSERT_TRUE(joint.Validate().ok());
  const double free_best = *EnumerateBestStrategy(joint, false);
  EXPECT_NEAR(*AttackExpectedAccuracy(joint, false), free_best, 1e-12);
  auto contextual_best = EnumerateBestStrategy(joint, true);
  if (contextual_best.ok()) {
    EXPECT_NEAR(*AttackExpectedAccuracy(joint, true), *contextual_best, 1e-12);
    EXPECT_GE(*contextual_best, free_best - 1e-12);
  }
  // Restricting candidates can only lose accuracy.
  EXPECT_LE(*AttackExpectedAccuracy(joint, true, 1), free_best + 1e-12);
  EXPECT_LE(*AttackExpectedAccuracy(joint, true, 2),
            *AttackExpectedAccuracy(joint, true) + 1e-12);
  const ConditionalEntropy h = ConditionalEntropies(joint);
  EXPECT_LE(h.x_given_yc, h.x_given_y + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomJointTest,
                         ::testing::Range<uint64_t>(100, 130));

}  // namespace
}  // namespace tokenrecon
