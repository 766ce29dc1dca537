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

#ifndef TOKENRECON_ASR_H_
#define TOKENRECON_ASR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/context.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// Attack success rate of one method in one experiment cell.
struct AsrReport {
  std::string method;
  double epsilon = 0.0;
  std::optional<int> k;
  std::optional<double> shadow_ratio;
  // Multiplier on 1/alpha for the shadow-smoothed attacks.
  std::optional<double> smoothing;
  int64_t matched = 0;
  int64_t total = 0;
  double asr = 0.0;
  uint64_t seed = 0;
  int64_t elapsed_ms = 0;
  // Set when the cell failed; the counts are then zero.
  std::string error;
};

nlohmann::ordered_json AsrReportToJson(const AsrReport& report);
absl::StatusOr<AsrReport> AsrReportFromJson(const nlohmann::json& json);

// Exact-match rate over masked positions. InvalidArgument on misaligned
// inputs or an empty mask.
absl::StatusOr<AsrReport> ComputeAsr(std::span<const TokenId> originals,
                                     std::span<const TokenId> reconstructions,
                                     const std::vector<bool>& mask);

// Same over string records: compares `tokens` with `reconstructed` on the
// sensitive positions of every record.
absl::StatusOr<AsrReport> ComputeAsr(
    const std::vector<SentenceRecord>& records,
    const std::vector<std::vector<std::string>>& reconstructed);

enum class AttackKind {
  kContextFree,
  kContextual,
  kEmbeddingInversion,
};

// Everything an attack over a sanitized corpus may need. Pointers are
// non-owning; which ones must be set depends on the kind.
struct AttackSetup {
  AttackKind kind = AttackKind::kContextFree;
  const Vocabulary* vocab = nullptr;
  const Channel* channel = nullptr;
  const PriorModel* prior = nullptr;
  const ContextScorer* scorer = nullptr;
  const EmbeddingTable* embeddings = nullptr;
  int k = 10;
  int threads = 1;
};

// Reconstructs every sensitive position of every record (non-sensitive
// positions echo the sanitized token). Records must carry "sanitized".
absl::StatusOr<std::vector<std::vector<std::string>>> ReconstructCorpus(
    const std::vector<SentenceRecord>& records, const AttackSetup& setup);

// Empirical ASR of the optimal context-free attack with an exact prior.
absl::StatusOr<AsrReport> ContextFreeBound(
    const std::vector<SentenceRecord>& dataset, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& exact_prior, int threads = 1);

// Empirical ASR of the contextual attack with an exact prior, the given
// scorer and top-K truncation.
absl::StatusOr<AsrReport> ContextualKBound(
    const std::vector<SentenceRecord>& dataset, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& exact_prior,
    const ContextScorer& scorer, int k, int threads = 1);

}  // namespace tokenrecon

#endif  // TOKENRECON_ASR_H_
