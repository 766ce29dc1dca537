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

#include "tokenrecon/sweep.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tokenrecon/ngram.h"
#include "tokenrecon/parallel.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

namespace {

bool IsKnownMethod(const std::string& m) {
  return m == kMethodContextFreeBound || m == kMethodContextualKBound ||
         m == kMethodOptimal || m == kMethodBayes ||
         m == kMethodContextualBayes || m == kMethodEmbeddingInversion;
}

bool IsContextual(const std::string& m) {
  return m == kMethodContextualKBound || m == kMethodContextualBayes;
}

bool UsesShadow(const std::string& m) {
  return m == kMethodBayes || m == kMethodContextualBayes;
}

// Seed keys separating the independent random streams of a sweep.
constexpr uint64_t kPrivateStream = 1;
constexpr uint64_t kShadowStream = 2;

}  // namespace

absl::Status SweepSpec::Validate() const {
  if (epsilons.empty()) return absl::InvalidArgumentError("empty epsilon grid");
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("epsilon must be positive, got ", e));
    }
  }
  if (methods.empty()) return absl::InvalidArgumentError("empty method list");
  for (const std::string& m : methods) {
    if (!IsKnownMethod(m)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown method: ", m));
    }
  }
  if (ks.empty()) return absl::InvalidArgumentError("empty K grid");
  for (int k : ks) {
    if (k < 1) return absl::InvalidArgumentError("K must be >= 1");
  }
  if (shadow_ratios.empty()) {
    return absl::InvalidArgumentError("empty shadow ratio grid");
  }
  for (double r : shadow_ratios) {
    if (!(r > 0.0 && r <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("shadow ratio must be in (0, 1], got ", r));
    }
  }
  if (smoothing.empty()) return absl::InvalidArgumentError("empty smoothing grid");
  for (double s : smoothing) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      return absl::InvalidArgumentError("smoothing multipliers must be >= 0");
    }
  }
  if (private_size < 0) {
    return absl::InvalidArgumentError("private_size must be >= 0");
  }
  if (replications < 1) {
    return absl::InvalidArgumentError("replications must be >= 1");
  }
  if (adjacency_size < 1) {
    return absl::InvalidArgumentError("adjacency_size must be >= 1");
  }
  if (scorer != "ngram" && scorer != "constant") {
    return absl::InvalidArgumentError(absl::StrCat(
        "sweep scorer must be ngram or constant, got ", scorer));
  }
  if (ngram_order != 2 && ngram_order != 3) {
    return absl::InvalidArgumentError("ngram_order must be 2 or 3");
  }
  if (!(ngram_smoothing > 0.0)) {
    return absl::InvalidArgumentError("ngram_smoothing must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<SweepSpec> SweepSpecFromJson(const nlohmann::json& j) {
  static const std::set<std::string> kFields = {
      "mechanism",   "adjacency_size", "epsilons",   "methods",
      "k",           "shadow_ratios",  "smoothing",  "private_size",
      "shadow_path", "replications",   "scorer",     "ngram_order",
      "ngram_smoothing", "seed",       "timing"};
  if (!j.is_object()) return absl::InvalidArgumentError("spec must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kFields.contains(key)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown spec field: ", key));
    }
  }
  SweepSpec spec;
  try {
    if (j.contains("mechanism")) {
      TOKENRECON_ASSIGN_OR_RETURN(
          spec.mechanism,
          ParseMechanismKind(j.at("mechanism").get<std::string>()));
    }
    if (j.contains("adjacency_size")) {
      spec.adjacency_size = j.at("adjacency_size").get<int>();
    }
    if (j.contains("epsilons")) {
      spec.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    if (j.contains("methods")) {
      spec.methods = j.at("methods").get<std::vector<std::string>>();
    }
    if (j.contains("k")) spec.ks = j.at("k").get<std::vector<int>>();
    if (j.contains("shadow_ratios")) {
      spec.shadow_ratios = j.at("shadow_ratios").get<std::vector<double>>();
    }
    if (j.contains("smoothing")) {
      spec.smoothing = j.at("smoothing").get<std::vector<double>>();
    }
    if (j.contains("private_size")) {
      spec.private_size = j.at("private_size").get<int>();
    }
    if (j.contains("shadow_path")) {
      spec.shadow_path = j.at("shadow_path").get<std::string>();
    }
    if (j.contains("replications")) {
      spec.replications = j.at("replications").get<int>();
    }
    if (j.contains("scorer")) spec.scorer = j.at("scorer").get<std::string>();
    if (j.contains("ngram_order")) {
      spec.ngram_order = j.at("ngram_order").get<int>();
    }
    if (j.contains("ngram_smoothing")) {
      spec.ngram_smoothing = j.at("ngram_smoothing").get<double>();
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<uint64_t>();
    if (j.contains("timing")) spec.timing = j.at("timing").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed spec: ", e.what()));
  }
  TOKENRECON_RETURN_IF_ERROR(spec.Validate());
  return spec;
}

nlohmann::ordered_json SweepSpecToJson(const SweepSpec& spec) {
  nlohmann::ordered_json j;
  j["mechanism"] = std::string(MechanismKindName(spec.mechanism));
  j["adjacency_size"] = spec.adjacency_size;
  j["epsilons"] = spec.epsilons;
  j["methods"] = spec.methods;
  j["k"] = spec.ks;
  j["shadow_ratios"] = spec.shadow_ratios;
  j["smoothing"] = spec.smoothing;
  j["private_size"] = spec.private_size;
  j["shadow_path"] = spec.shadow_path;
  j["replications"] = spec.replications;
  j["scorer"] = spec.scorer;
  j["ngram_order"] = spec.ngram_order;
  j["ngram_smoothing"] = spec.ngram_smoothing;
  j["seed"] = spec.seed;
  j["timing"] = spec.timing;
  return j;
}

namespace {

struct Cell {
  size_t epsilon_index;
  std::string method;
  std::optional<int> k;
  std::optional<double> shadow_ratio;
  std::optional<double> smoothing;
};

// Inputs shared by every cell with the same epsilon.
struct EpsilonData {
  Channel channel;
  // Every replication of the private part, sanitized.
  std::vector<SentenceRecord> sanitized;
  PriorModel exact_prior;
};

absl::StatusOr<EpsilonData> PrepareEpsilon(
    const SweepSpec& spec, size_t index,
    const std::vector<SentenceRecord>& private_part, const Vocabulary& vocab,
    const EmbeddingTable& embeddings, int threads) {
  MechanismConfig config;
  config.epsilon = spec.epsilons[index];
  config.kind = spec.mechanism;
  config.adjacency_size = spec.adjacency_size;
  config.seed = DeriveSeed(DeriveSeed(spec.seed, kPrivateStream), index);
  EpsilonData data;
  TOKENRECON_ASSIGN_OR_RETURN(data.channel, BuildChannel(embeddings, config));
  for (int r = 0; r < spec.replications; ++r) {
    TOKENRECON_ASSIGN_OR_RETURN(
        std::vector<SentenceRecord> round,
        SanitizeCorpus(private_part, vocab, data.channel,
                       DeriveSeed(config.seed, r), threads));
    for (SentenceRecord& record : round) {
      data.sanitized.push_back(std::move(record));
    }
  }
  TOKENRECON_ASSIGN_OR_RETURN(data.exact_prior,
                              EstimatePrior(private_part, vocab));
  return data;
}

absl::StatusOr<AsrReport> RunCell(const SweepSpec& spec, const Cell& cell,
                                  const EpsilonData& data,
                                  const std::vector<SentenceRecord>& pool,
                                  const Vocabulary& vocab,
                                  const EmbeddingTable& embeddings) {
  const auto start = std::chrono::steady_clock::now();
  AttackSetup setup;
  setup.vocab = &vocab;
  setup.channel = &data.channel;
  setup.embeddings = &embeddings;
  setup.prior = &data.exact_prior;

  PriorModel shadow_prior;
  std::unique_ptr<ContextScorer> scorer;
  std::vector<SentenceRecord> shadow;
  if (UsesShadow(cell.method)) {
    const size_t want = static_cast<size_t>(std::ceil(
        *cell.shadow_ratio * static_cast<double>(
                                 std::max<int>(spec.private_size, 1))));
    if (want > pool.size()) {
      return absl::FailedPreconditionError(absl::StrCat(
          "shadow ratio ", *cell.shadow_ratio, " needs ", want,
          " sentences but the shadow pool has ", pool.size()));
    }
    shadow.assign(pool.begin(), pool.begin() + want);
    PriorOptions options;
    options.mode = PriorMode::kShadowSmoothed;
    options.smoothing = *cell.smoothing;
    TOKENRECON_ASSIGN_OR_RETURN(shadow_prior,
                                EstimatePrior(shadow, vocab, options));
    setup.prior = &shadow_prior;
  }
  if (IsContextual(cell.method)) {
    if (spec.scorer == "constant") {
      scorer = std::make_unique<ConstantScorer>();
    } else {
      // The practical attack learns context from its own sanitized shadow
      // data; the bound learns it from the attacked data.
      std::vector<SentenceRecord> training;
      if (cell.method == kMethodContextualBayes) {
        for (SentenceRecord& r : shadow) r.sanitized.reset();
        TOKENRECON_ASSIGN_OR_RETURN(
            training,
            SanitizeCorpus(shadow, vocab, data.channel,
                           DeriveSeed(DeriveSeed(spec.seed, kShadowStream),
                                      cell.epsilon_index)));
      } else {
        training = data.sanitized;
      }
      TOKENRECON_ASSIGN_OR_RETURN(
          NgramScorer ngram,
          NgramTrain(training, spec.ngram_order, spec.ngram_smoothing));
      scorer = std::make_unique<NgramScorer>(std::move(ngram));
    }
    setup.scorer = scorer.get();
    setup.k = *cell.k;
  }
  if (cell.method == kMethodEmbeddingInversion) {
    setup.kind = AttackKind::kEmbeddingInversion;
  } else if (IsContextual(cell.method)) {
    setup.kind = AttackKind::kContextual;
  } else {
    setup.kind = AttackKind::kContextFree;
  }
  TOKENRECON_ASSIGN_OR_RETURN(auto reconstructed,
                              ReconstructCorpus(data.sanitized, setup));
  TOKENRECON_ASSIGN_OR_RETURN(AsrReport report,
                              ComputeAsr(data.sanitized, reconstructed));
  if (spec.timing) {
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  }
  return report;
}

}  // namespace

absl::StatusOr<std::vector<AsrReport>> RunSweep(
    const SweepSpec& spec, const std::vector<SentenceRecord>& corpus,
    const Vocabulary& vocab, const EmbeddingTable& embeddings,
    const std::vector<SentenceRecord>* misaligned_shadow, int threads) {
  TOKENRECON_RETURN_IF_ERROR(spec.Validate());
  if (embeddings.num_tokens() != vocab.size()) {
    return absl::InvalidArgumentError(
        "vocabulary and embedding sizes disagree");
  }
  const size_t private_size =
      spec.private_size == 0
          ? corpus.size()
          : std::min(corpus.size(), static_cast<size_t>(spec.private_size));
  if (private_size == 0) {
    return absl::InvalidArgumentError("no sentences to attack");
  }
  const std::vector<SentenceRecord> private_part(
      corpus.begin(), corpus.begin() + private_size);
  std::vector<SentenceRecord> pool =
      misaligned_shadow != nullptr
          ? *misaligned_shadow
          : std::vector<SentenceRecord>(corpus.begin() + private_size,
                                        corpus.end());
  for (SentenceRecord& r : pool) r.sanitized.reset();

  std::vector<Cell> cells;
  for (size_t e = 0; e < spec.epsilons.size(); ++e) {
    for (const std::string& method : spec.methods) {
      std::vector<std::optional<int>> ks = {std::nullopt};
      if (IsContextual(method)) ks.assign(spec.ks.begin(), spec.ks.end());
      std::vector<std::optional<double>> ratios = {std::nullopt};
      std::vector<std::optional<double>> smoothing = {std::nullopt};
      if (UsesShadow(method)) {
        ratios.assign(spec.shadow_ratios.begin(), spec.shadow_ratios.end());
        smoothing.assign(spec.smoothing.begin(), spec.smoothing.end());
      }
      for (const auto& k : ks) {
        for (const auto& ratio : ratios) {
          for (const auto& s : smoothing) {
            cells.push_back({e, method, k, ratio, s});
          }
        }
      }
    }
  }

  const int workers = ResolveThreads(threads);
  std::vector<absl::StatusOr<EpsilonData>> per_epsilon(
      spec.epsilons.size(), absl::UnknownError("not run"));
  for (size_t e = 0; e < spec.epsilons.size(); ++e) {
    per_epsilon[e] =
        PrepareEpsilon(spec, e, private_part, vocab, embeddings, workers);
  }

  std::vector<AsrReport> reports(cells.size());
  ParallelFor(cells.size(), workers, [&](size_t i) {
    const Cell& cell = cells[i];
    absl::StatusOr<AsrReport> result =
        per_epsilon[cell.epsilon_index].ok()
            ? RunCell(spec, cell, *per_epsilon[cell.epsilon_index], pool,
                      vocab, embeddings)
            : absl::StatusOr<AsrReport>(
                  per_epsilon[cell.epsilon_index].status());
    AsrReport report = result.ok() ? *std::move(result) : AsrReport{};
    if (!result.ok()) report.error = result.status().ToString();
    report.method = cell.method;
    report.epsilon = spec.epsilons[cell.epsilon_index];
    report.k = cell.k;
    report.shadow_ratio = cell.shadow_ratio;
    report.smoothing = cell.smoothing;
    report.seed = spec.seed;
    reports[i] = std::move(report);
  });
  return reports;
}

std::string ReportToJson(const nlohmann::ordered_json& spec,
                         const std::vector<AsrReport>& results) {
  nlohmann::ordered_json j;
  j["spec"] = spec;
  j["results"] = nlohmann::ordered_json::array();
  for (const AsrReport& r : results) j["results"].push_back(AsrReportToJson(r));
  return j.dump(2) + "\n";
}

std::string ReportToCsv(const std::vector<AsrReport>& results) {
  std::ostringstream out;
  out << "method,epsilon,k,shadow_ratio,smoothing,asr,matched,total,"
         "elapsed_ms,seed,error\n";
  auto num = [](const nlohmann::ordered_json& v) {
    return v.is_null() ? std::string() : v.dump();
  };
  for (const AsrReport& r : results) {
    const nlohmann::ordered_json j = AsrReportToJson(r);
    std::string error = r.error;
    // Quote the free-text column.
    std::string quoted = "\"";
    for (char c : error) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    out << r.method << ',' << num(j["epsilon"]) << ',' << num(j["k"]) << ','
        << num(j["shadow_ratio"]) << ',' << num(j["smoothing"]) << ','
        << num(j["asr"]) << ',' << r.matched << ',' << r.total << ','
        << r.elapsed_ms << ',' << r.seed << ',' << (error.empty() ? "" : quoted)
        << '\n';
  }
  return out.str();
}

absl::StatusOr<std::vector<AsrReport>> ParseReportResults(
    const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("results") ||
      !j["results"].is_array()) {
    return absl::InvalidArgumentError("report must contain a results array");
  }
  std::vector<AsrReport> results;
  for (const auto& item : j["results"]) {
    TOKENRECON_ASSIGN_OR_RETURN(AsrReport r, AsrReportFromJson(item));
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace tokenrecon
