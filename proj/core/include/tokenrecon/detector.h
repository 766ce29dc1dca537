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

#ifndef TOKENRECON_DETECTOR_H_
#define TOKENRECON_DETECTOR_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// Training pair for the detector h: seq_a = f(c, y) (the sanitized sentence),
// seq_b = f(c, x'). label is 1 iff x' is the true original token.
struct DetectorSample {
  std::vector<std::string> seq_a;
  std::vector<std::string> seq_b;
  int label = 0;
  // Attacked position; not serialized.
  size_t position = 0;

  friend bool operator==(const DetectorSample&,
                         const DetectorSample&) = default;
};

// Sanitizes every shadow sentence `replications` times and emits, for each
// sensitive position, the sample built from the context-free reconstruction
// plus its balancing partner: a label-1 sample is paired with the rank-2
// candidate (label 0), a label-0 sample with the true original (label 1).
// Replication r uses seed DeriveSeed(seed, r). Sample order follows
// (replication, sentence, position).
absl::StatusOr<std::vector<DetectorSample>> BuildDetectorSamples(
    const std::vector<SentenceRecord>& shadow, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& prior, int replications,
    uint64_t seed, int threads = 1);

// JSON-lines: {"seq_a": [string], "seq_b": [string], "label": 0|1}
std::string SerializeDetectorSample(const DetectorSample& sample);
absl::StatusOr<DetectorSample> ParseDetectorSample(absl::string_view json_line);
void WriteDetectorSamples(const std::vector<DetectorSample>& samples,
                          std::ostream& out);
absl::StatusOr<std::vector<DetectorSample>> ReadDetectorSamples(
    std::istream& in);

}  // namespace tokenrecon

#endif  // TOKENRECON_DETECTOR_H_
