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

#ifndef TOKENRECON_RNG_H_
#define TOKENRECON_RNG_H_

#include <cstdint>
#include <random>

namespace tokenrecon {

// Deterministically mixes a base seed with a key into a new 64-bit seed.
uint64_t DeriveSeed(uint64_t base, uint64_t key);

// A reproducible random stream. Only the raw engine output is used, so the
// values are identical across standard library implementations.
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  // Stream for one sentence position: keyed by (seed XOR sentence id,
  // position), so a position's draws do not depend on processing order.
  static RngStream ForPosition(uint64_t seed, int64_t sentence_id,
                               int64_t position);

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double NextUniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform integer in [0, n). Requires n > 0.
  uint64_t NextBelow(uint64_t n);
  // Standard normal via Box-Muller.
  double NextGaussian();

 private:
  std::mt19937_64 engine_;
};

}  // namespace tokenrecon

#endif  // TOKENRECON_RNG_H_
