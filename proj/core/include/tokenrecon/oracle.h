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

#ifndef TOKENRECON_ORACLE_H_
#define TOKENRECON_ORACLE_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "tokenrecon/joint.h"

namespace tokenrecon {

// Largest strategy space EnumerateBestStrategy will walk.
inline constexpr uint64_t kMaxStrategies = 10'000'000;

// Exhaustive search over every deterministic strategy sigma: Y -> X (or
// Y x C -> X when `contextual`), returning the best expected accuracy
// sum over observations o of Pr(sigma(o), o). OutOfRange when the space
// exceeds kMaxStrategies.
absl::StatusOr<double> EnumerateBestStrategy(const JointDistribution& joint,
                                             bool contextual);

struct ConditionalEntropy {
  // Both in nats.
  double x_given_y = 0.0;
  double x_given_yc = 0.0;
};

ConditionalEntropy ConditionalEntropies(const JointDistribution& joint);

// Expected accuracy of the implemented attacks when the attacker knows the
// joint exactly: the context-free attack with the exact prior, or the
// contextual attack with ExactJointScorer restricted to the top `k`
// candidates (k <= 0 means all of X).
absl::StatusOr<double> AttackExpectedAccuracy(const JointDistribution& joint,
                                              bool contextual, int k = 0);

}  // namespace tokenrecon

#endif  // TOKENRECON_ORACLE_H_
