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

#include "tokenrecon/rng.h"

#include <cmath>
#include <numbers>

namespace tokenrecon {

namespace {

std::seed_seq MakeSeedSeq(uint64_t a, uint64_t b) {
  return std::seed_seq{static_cast<uint32_t>(a), static_cast<uint32_t>(a >> 32),
                       static_cast<uint32_t>(b), static_cast<uint32_t>(b >> 32)};
}

}  // namespace

uint64_t DeriveSeed(uint64_t base, uint64_t key) {
  std::seed_seq seq{static_cast<uint32_t>(base),
                    static_cast<uint32_t>(base >> 32),
                    static_cast<uint32_t>(key), static_cast<uint32_t>(key >> 32),
                    0x9e3779b9u};
  uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<uint64_t>(out[1]) << 32) | out[0];
}

RngStream::RngStream(uint64_t seed) {
  std::seed_seq seq = MakeSeedSeq(seed, 0);
  engine_.seed(seq);
}

RngStream RngStream::ForPosition(uint64_t seed, int64_t sentence_id,
                                 int64_t position) {
  RngStream stream(0);
  std::seed_seq seq =
      MakeSeedSeq(seed ^ static_cast<uint64_t>(sentence_id),
                  static_cast<uint64_t>(position) + 1);
  stream.engine_.seed(seq);
  return stream;
}

uint64_t RngStream::NextBelow(uint64_t n) {
  // Rejection sampling keeps the result unbiased.
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

double RngStream::NextGaussian() {
  double u1 = NextUniform();
  while (u1 <= 0.0) u1 = NextUniform();
  const double u2 = NextUniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace tokenrecon
