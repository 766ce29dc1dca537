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

#include "tokenrecon/asr.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tokenrecon/attack.h"
#include "tokenrecon/parallel.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

nlohmann::ordered_json AsrReportToJson(const AsrReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["epsilon"] = report.epsilon;
  j["k"] = report.k ? nlohmann::ordered_json(*report.k) : nlohmann::ordered_json(nullptr);
  j["shadow_ratio"] =
      report.shadow_ratio ? nlohmann::ordered_json(*report.shadow_ratio) : nlohmann::ordered_json(nullptr);
  j["smoothing"] =
      report.smoothing ? nlohmann::ordered_json(*report.smoothing) : nlohmann::ordered_json(nullptr);
  j["asr"] = report.asr;
  j["matched"] = report.matched;
  j["total"] = report.total;
  j["elapsed_ms"] = report.elapsed_ms;
  j["seed"] = report.seed;
  if (!report.error.empty()) j["error"] = report.error;
  return j;
}

absl::StatusOr<AsrReport> AsrReportFromJson(const nlohmann::json& j) {
  AsrReport r;
  try {
    r.method = j.at("method").get<std::string>();
    r.epsilon = j.at("epsilon").get<double>();
    if (!j.at("k").is_null()) r.k = j.at("k").get<int>();
    if (!j.at("shadow_ratio").is_null()) {
      r.shadow_ratio = j.at("shadow_ratio").get<double>();
    }
    if (j.contains("smoothing") && !j.at("smoothing").is_null()) {
      r.smoothing = j.at("smoothing").get<double>();
    }
    r.asr = j.at("asr").get<double>();
    r.matched = j.at("matched").get<int64_t>();
    r.total = j.at("total").get<int64_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<int64_t>();
    r.seed = j.at("seed").get<uint64_t>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed report entry: ", e.what()));
  }
  return r;
}

absl::StatusOr<AsrReport> ComputeAsr(std::span<const TokenId> originals,
                                     std::span<const TokenId> reconstructions,
                                     const std::vector<bool>& mask) {
  if (originals.size() != reconstructions.size() ||
      originals.size() != mask.size()) {
    return absl::InvalidArgumentError(
        "originals, reconstructions and mask must have equal length");
  }
  AsrReport report;
  for (size_t i = 0; i < originals.size(); ++i) {
    if (!mask[i]) continue;
    ++report.total;
    if (originals[i] == reconstructions[i]) ++report.matched;
  }
  if (report.total == 0) {
    return absl::InvalidArgumentError("no masked positions to score");
  }
  report.asr =
      static_cast<double>(report.matched) / static_cast<double>(report.total);
  return report;
}

absl::StatusOr<AsrReport> ComputeAsr(
    const std::vector<SentenceRecord>& records,
    const std::vector<std::vector<std::string>>& reconstructed) {
  if (records.size() != reconstructed.size()) {
    return absl::InvalidArgumentError(
        "one reconstruction per record required");
  }
  AsrReport report;
  for (size_t r = 0; r < records.size(); ++r) {
    const SentenceRecord& record = records[r];
    if (reconstructed[r].size() != record.tokens.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "sentence ", record.id, ": reconstruction length mismatch"));
    }
    for (size_t i = 0; i < record.tokens.size(); ++i) {
      if (!record.sensitive[i]) continue;
      ++report.total;
      if (record.tokens[i] == reconstructed[r][i]) ++report.matched;
    }
  }
  if (report.total == 0) {
    return absl::InvalidArgumentError("no masked positions to score");
  }
  report.asr =
      static_cast<double>(report.matched) / static_cast<double>(report.total);
  return report;
}

namespace {

absl::Status CheckSetup(const AttackSetup& setup) {
  if (setup.vocab == nullptr) {
    return absl::InvalidArgumentError("attack needs a vocabulary");
  }
  switch (setup.kind) {
    case AttackKind::kContextual:
      if (setup.scorer == nullptr) {
        return absl::InvalidArgumentError("contextual attack needs a scorer");
      }
      if (setup.k < 1) return absl::InvalidArgumentError("K must be >= 1");
      [[fallthrough]];
    case AttackKind::kContextFree:
      if (setup.channel == nullptr || setup.prior == nullptr) {
        return absl::InvalidArgumentError(
            "Bayesian attacks need a channel and a prior");
      }
      if (setup.channel->vocab_size() != setup.vocab->size() ||
          setup.prior->size() != setup.vocab->size()) {
        return absl::InvalidArgumentError(
            "vocabulary, channel and prior sizes disagree");
      }
      return absl::OkStatus();
    case AttackKind::kEmbeddingInversion:
      if (setup.embeddings == nullptr) {
        return absl::InvalidArgumentError(
            "embedding inversion needs embeddings");
      }
      if (setup.embeddings->num_tokens() != setup.vocab->size()) {
        return absl::InvalidArgumentError(
            "vocabulary and embedding sizes disagree");
      }
      return absl::OkStatus();
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<std::string>> ReconstructRecord(
    const SentenceRecord& record, const AttackSetup& setup) {
  if (!record.sanitized.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("sentence ", record.id, " has no sanitized tokens"));
  }
  const std::vector<std::string>& seq = *record.sanitized;
  std::vector<std::string> out = seq;
  const DistanceMetric metric = setup.channel != nullptr
                                    ? setup.channel->config().metric
                                    : DistanceMetric::kEuclidean;
  for (size_t i = 0; i < seq.size(); ++i) {
    if (!record.sensitive[i]) continue;
    auto y = setup.vocab->Lookup(seq[i]);
    if (!y.ok()) {
      return absl::NotFoundError(absl::StrCat(
          "sentence ", record.id, ": ", y.status().message()));
    }
    TokenId x = 0;
    switch (setup.kind) {
      case AttackKind::kContextFree: {
        TOKENRECON_ASSIGN_OR_RETURN(
            x, ReconstructContextFree(*y, *setup.channel, *setup.prior));
        break;
      }
      case AttackKind::kContextual: {
        TOKENRECON_ASSIGN_OR_RETURN(ContextWindow window,
                                    ContextWindow::Create(seq, i));
        TOKENRECON_ASSIGN_OR_RETURN(
            x, ReconstructContextual(*y, window, *setup.vocab, *setup.channel,
                                     *setup.prior, *setup.scorer, setup.k));
        break;
      }
      case AttackKind::kEmbeddingInversion:
        x = EmbeddingInversion(*y, *setup.embeddings, metric);
        break;
    }
    out[i] = setup.vocab->token(x);
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<std::vector<std::string>>> ReconstructCorpus(
    const std::vector<SentenceRecord>& records, const AttackSetup& setup) {
  TOKENRECON_RETURN_IF_ERROR(CheckSetup(setup));
  std::vector<absl::StatusOr<std::vector<std::string>>> results(
      records.size(), absl::UnknownError("not run"));
  ParallelFor(records.size(), setup.threads, [&](size_t r) {
    results[r] = ReconstructRecord(records[r], setup);
  });
  std::vector<std::vector<std::string>> out;
  out.reserve(records.size());
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    out.push_back(*std::move(r));
  }
  return out;
}

absl::StatusOr<AsrReport> ContextFreeBound(
    const std::vector<SentenceRecord>& dataset, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& exact_prior, int threads) {
  if (exact_prior.mode() != PriorMode::kExact) {
    return absl::InvalidArgumentError("bounds require an exact prior");
  }
  AttackSetup setup;
  setup.kind = AttackKind::kContextFree;
  setup.vocab = &vocab;
  setup.channel = &channel;
  setup.prior = &exact_prior;
  setup.threads = threads;
  TOKENRECON_ASSIGN_OR_RETURN(auto reconstructed,
                              ReconstructCorpus(dataset, setup));
  TOKENRECON_ASSIGN_OR_RETURN(AsrReport report,
                              ComputeAsr(dataset, reconstructed));
  report.method = "context-free-bound";
  report.epsilon = channel.config().epsilon;
  report.seed = channel.config().seed;
  return report;
}

absl::StatusOr<AsrReport> ContextualKBound(
    const std::vector<SentenceRecord>& dataset, const Vocabulary& vocab,
    const Channel& channel, const PriorModel& exact_prior,
    const ContextScorer& scorer, int k, int threads) {
  if (exact_prior.mode() != PriorMode::kExact) {
    return absl::InvalidArgumentError("bounds require an exact prior");
  }
  AttackSetup setup;
  setup.kind = AttackKind::kContextual;
  setup.vocab = &vocab;
  setup.channel = &channel;
  setup.prior = &exact_prior;
  setup.scorer = &scorer;
  setup.k = k;
  setup.threads = threads;
  TOKENRECON_ASSIGN_OR_RETURN(auto reconstructed,
                              ReconstructCorpus(dataset, setup));
  TOKENRECON_ASSIGN_OR_RETURN(AsrReport report,
                              ComputeAsr(dataset, reconstructed));
  report.method = "contextual-k-bound";
  report.epsilon = channel.config().epsilon;
  report.k = k;
  report.seed = channel.config().seed;
  return report;
}

}  // namespace tokenrecon
