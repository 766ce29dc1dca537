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

#ifndef TOKENRECON_TESTS_TEST_UTIL_H_
#define TOKENRECON_TESTS_TEST_UTIL_H_

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/status_macros.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon::testing {

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr)                \
  ASSERT_OK_AND_ASSIGN_IMPL_(                           \
      TOKENRECON_STATUS_CONCAT_(_statusor_, __LINE__), lhs, rexpr)
#define ASSERT_OK_AND_ASSIGN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  ASSERT_TRUE(statusor.ok()) << statusor.status();       \
  lhs = *std::move(statusor)

#define EXPECT_OK(expr) EXPECT_TRUE((expr).ok()) << (expr)
#define ASSERT_OK(expr) ASSERT_TRUE((expr).ok()) << (expr)

inline Vocabulary MakeVocab(std::vector<std::string> tokens) {
  return *Vocabulary::Create(std::move(tokens));
}

// Full-vocab channel from a dense row-stochastic matrix (zeros allowed).
inline Channel ChannelFromMatrix(const std::vector<std::vector<double>>& m,
                                 double epsilon = 1.0) {
  std::vector<Channel::Row> rows(m.size());
  for (size_t x = 0; x < m.size(); ++x) {
    for (size_t y = 0; y < m[x].size(); ++y) {
      rows[x].candidates.push_back(static_cast<TokenId>(y));
      rows[x].logprobs.push_back(m[x][y] > 0 ? std::log(m[x][y])
                                             : -INFINITY);
    }
  }
  MechanismConfig config;
  config.epsilon = epsilon;
  auto channel = Channel::FromRows(config, static_cast<int>(m.size()),
                                   std::move(rows));
  EXPECT_TRUE(channel.ok()) << channel.status();
  return *std::move(channel);
}

// One-dimensional embeddings.
inline EmbeddingTable Line(std::vector<double> positions) {
  return *EmbeddingTable::Create(1, std::move(positions));
}

}  // namespace tokenrecon::testing

#endif  // TOKENRECON_TESTS_TEST_UTIL_H_
