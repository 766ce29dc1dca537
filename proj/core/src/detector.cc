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

#include "tokenrecon/detector.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/attack.h"
#include "tokenrecon/context.h"
#include "tokenrecon/parallel.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

namespace {

// Samples for one sanitized shadow sentence.
absl::StatusOr<std::vector<DetectorSample>> SamplesForSentence(
    const SentenceRecord& sanitized, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& prior) {
  std::vector<DetectorSample> out;
  const std::vector<std::string>& seq = *sanitized.sanitized;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (!sanitized.sensitive[i]) continue;
    TOKENRECON_ASSIGN_OR_RETURN(TokenId y, vocab.Lookup(seq[i]));
    TOKENRECON_ASSIGN_OR_RETURN(std::vector<TokenId> ranked,
                                TopKCandidates(y, 2, channel, prior));
    if (ranked.size() < 2) {
      return absl::FailedPreconditionError(
          "need at least two candidate tokens to build a negative sample");
    }
    TOKENRECON_ASSIGN_OR_RETURN(ContextWindow window,
                                ContextWindow::Create(seq, i));
    const std::string& original = sanitized.tokens[i];
    const std::string& guess = vocab.token(ranked[0]);
    DetectorSample primary{seq, Substitute(window, guess),
                           guess == original ? 1 : 0, i};
    DetectorSample partner;
    if (primary.label == 1) {
      partner = {seq, Substitute(window, vocab.token(ranked[1])), 0, i};
    } else {
      partner = {seq, Substitute(window, original), 1, i};
    }
    out.push_back(std::move(primary));
    out.push_back(std::move(partner));
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<DetectorSample>> BuildDetectorSamples(
    const std::vector<SentenceRecord>& shadow, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& prior, int replications,
    uint64_t seed, int threads) {
  if (replications < 1) {
    return absl::InvalidArgumentError("replications must be >= 1");
  }
  if (vocab.size() < 2) {
    return absl::FailedPreconditionError(
        "need at least two candidate tokens to build a negative sample");
  }
  const size_t n = shadow.size();
  std::vector<absl::StatusOr<std::vector<DetectorSample>>> parts(
      n * replications, absl::UnknownError("not run"));
  ParallelFor(parts.size(), threads, [&](size_t index) {
    const size_t r = index / n;
    SentenceRecord original = shadow[index % n];
    original.sanitized.reset();
    auto sanitized =
        SanitizeSentence(original, vocab, channel, DeriveSeed(seed, r));
    if (!sanitized.ok()) {
      parts[index] = sanitized.status();
      return;
    }
    parts[index] = SamplesForSentence(*sanitized, vocab, channel, prior);
  });
  std::vector<DetectorSample> samples;
  for (auto& part : parts) {
    if (!part.ok()) return part.status();
    for (DetectorSample& s : *part) samples.push_back(std::move(s));
  }
  return samples;
}

std::string SerializeDetectorSample(const DetectorSample& sample) {
  nlohmann::ordered_json j;
  j["seq_a"] = sample.seq_a;
  j["seq_b"] = sample.seq_b;
  j["label"] = sample.label;
  return j.dump();
}

absl::StatusOr<DetectorSample> ParseDetectorSample(absl::string_view json_line) {
  nlohmann::json j = nlohmann::json::parse(json_line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("not a JSON object");
  }
  DetectorSample sample;
  try {
    sample.seq_a = j.at("seq_a").get<std::vector<std::string>>();
    sample.seq_b = j.at("seq_b").get<std::vector<std::string>>();
    sample.label = j.at("label").get<int>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed detector sample: ", e.what()));
  }
  if (sample.label != 0 && sample.label != 1) {
    return absl::InvalidArgumentError("label must be 0 or 1");
  }
  if (sample.seq_a.size() != sample.seq_b.size()) {
    return absl::InvalidArgumentError("seq_a and seq_b lengths differ");
  }
  int differences = 0;
  for (size_t i = 0; i < sample.seq_a.size(); ++i) {
    if (sample.seq_a[i] != sample.seq_b[i]) {
      sample.position = i;
      ++differences;
    }
  }
  if (differences > 1) {
    return absl::InvalidArgumentError(
        "seq_a and seq_b differ in more than one position");
  }
  return sample;
}

void WriteDetectorSamples(const std::vector<DetectorSample>& samples,
                          std::ostream& out) {
  for (const DetectorSample& s : samples) {
    out << SerializeDetectorSample(s) << '\n';
  }
}

absl::StatusOr<std::vector<DetectorSample>> ReadDetectorSamples(
    std::istream& in) {
  std::vector<DetectorSample> samples;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto sample = ParseDetectorSample(line);
    if (!sample.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "samples line ", line_number, ": ", sample.status().message()));
    }
    samples.push_back(*std::move(sample));
  }
  return samples;
}

}  // namespace tokenrecon
