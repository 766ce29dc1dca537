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

#ifndef TOKENRECON_SWEEP_H_
#define TOKENRECON_SWEEP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/asr.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// Method names accepted in sweeps and by the CLI.
inline constexpr char kMethodContextFreeBound[] = "context-free-bound";
inline constexpr char kMethodContextualKBound[] = "contextual-k-bound";
inline constexpr char kMethodOptimal[] = "optimal";
inline constexpr char kMethodBayes[] = "bayes";
inline constexpr char kMethodContextualBayes[] = "contextual-bayes";
inline constexpr char kMethodEmbeddingInversion[] = "embedding-inversion";

// Experiment grid. The corpus handed to RunSweep is split into the attacked
// ("private") part, its first `private_size` sentences, and a shadow pool,
// the remaining sentences. `shadow_path`, when set, names a separate
// (misaligned) shadow corpus that replaces the pool.
struct SweepSpec {
  MechanismKind mechanism = MechanismKind::kFullVocab;
  int adjacency_size = 20;
  std::vector<double> epsilons;
  std::vector<std::string> methods;
  std::vector<int> ks = {10};
  std::vector<double> shadow_ratios = {1.0};
  // Multipliers on 1/alpha for bayes and contextual-bayes.
  std::vector<double> smoothing = {1.0};
  int private_size = 0;
  std::string shadow_path;
  // Sanitizations of each attacked sentence.
  int replications = 1;
  std::string scorer = "ngram";
  int ngram_order = 2;
  double ngram_smoothing = 0.1;
  uint64_t seed = 0;
  // Wall-clock timing makes reports differ between runs; off by default.
  bool timing = false;

  absl::Status Validate() const;
};

absl::StatusOr<SweepSpec> SweepSpecFromJson(const nlohmann::json& json);
nlohmann::ordered_json SweepSpecToJson(const SweepSpec& spec);

// One report per grid cell, ordered by (epsilon, method, k, shadow ratio,
// smoothing). k is only varied for contextual methods, shadow ratio and
// smoothing only for shadow-based methods. A failing cell carries its error
// instead of aborting the sweep.
absl::StatusOr<std::vector<AsrReport>> RunSweep(
    const SweepSpec& spec, const std::vector<SentenceRecord>& corpus,
    const Vocabulary& vocab, const EmbeddingTable& embeddings,
    const std::vector<SentenceRecord>* misaligned_shadow = nullptr,
    int threads = 1);

// {"spec": {...}, "results": [...]} serialized with a trailing newline.
std::string ReportToJson(const nlohmann::ordered_json& spec,
                         const std::vector<AsrReport>& results);
// Flat CSV with the same fields as the JSON results.
std::string ReportToCsv(const std::vector<AsrReport>& results);
absl::StatusOr<std::vector<AsrReport>> ParseReportResults(
    const std::string& json_text);

}  // namespace tokenrecon

#endif  // TOKENRECON_SWEEP_H_
