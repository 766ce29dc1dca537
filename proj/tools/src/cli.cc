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

#include "tokenrecon/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/asr.h"
#include "tokenrecon/context.h"
#include "tokenrecon/corpus.h"
#include "tokenrecon/detector.h"
#include "tokenrecon/detector_client.h"
#include "tokenrecon/embeddings.h"
#include "tokenrecon/joint.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/ngram.h"
#include "tokenrecon/oracle.h"
#include "tokenrecon/parallel.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/status_macros.h"
#include "tokenrecon/sweep.h"

namespace tokenrecon {
namespace {

// Sub-stream keys derived from --seed.
constexpr uint64_t kShadowSanitizeKey = 2;
constexpr uint64_t kDetectorSamplesKey = 3;
constexpr uint64_t kOracleKey = 4;

enum class LogLevel { kDebug, kInfo, kWarning, kError };

class Logger {
 public:
  Logger(std::ostream& err, LogLevel level) : err_(err), level_(level) {}

  template <typename... Args>
  void Info(const Args&... args) const {
    Log(LogLevel::kInfo, "info", args...);
  }
  template <typename... Args>
  void Debug(const Args&... args) const {
    Log(LogLevel::kDebug, "debug", args...);
  }
  template <typename... Args>
  void Warning(const Args&... args) const {
    Log(LogLevel::kWarning, "warning", args...);
  }

 private:
  template <typename... Args>
  void Log(LogLevel level, absl::string_view tag, const Args&... args) const {
    if (level < level_) return;
    err_ << "[" << tag << "] " << absl::StrCat(args...) << "\n";
  }

  std::ostream& err_;
  LogLevel level_;
};

struct GlobalFlags {
  uint64_t seed = 0;
  int threads = 0;
  std::string log_level = "info";
};

struct MechanismFlags {
  std::string embeddings;
  std::string mechanism = "full-vocab";
  double epsilon = 0.0;
  int adjacency_size = 20;
};

struct SanitizeFlags {
  std::string input;
  std::string output = "-";
  MechanismFlags mech;
};

struct AttackFlags {
  std::string input;
  std::string method;
  std::string shadow;
  int k = 10;
  std::string scorer = "ngram";
  std::string detector_url;
  int ngram_order = 2;
  double ngram_smoothing = 0.1;
  double smoothing = 1.0;
  int replications = 100;
  int epochs = 3;
  std::string output;
  std::string report = "-";
  MechanismFlags mech;
};

struct BoundFlags {
  std::string input;
  std::string type = "context-free";
  int k = 10;
  std::string scorer = "ngram";
  int ngram_order = 2;
  double ngram_smoothing = 0.1;
  std::string report = "-";
  MechanismFlags mech;
};

struct SweepFlags {
  std::string spec;
  std::string corpus;
  std::string embeddings;
  std::string shadow;
  std::vector<double> epsilons;
  std::string output = "-";
  std::string csv;
  bool timing = false;
};

struct OracleFlags {
  int vocab_size = 5;
  int context_size = 1;
  int trials = 100;
};

struct SamplesFlags {
  std::string shadow;
  int replications = 100;
  double smoothing = 1.0;
  std::string output = "-";
  MechanismFlags mech;
};

void AddMechanismOptions(CLI::App* cmd, MechanismFlags& flags,
                         bool epsilon_required) {
  cmd->add_option("--embeddings", flags.embeddings,
                  "Embedding file: one token per line followed by its vector")
      ->required();
  cmd->add_option("--mechanism", flags.mechanism, "full-vocab or adjacency")
      ->check(CLI::IsMember({"full-vocab", "adjacency"}))
      ->capture_default_str();
  auto* eps = cmd->add_option("--epsilon", flags.epsilon, "Privacy budget");
  if (epsilon_required) eps->required();
  cmd->add_option("--adjacency-size", flags.adjacency_size,
                  "Candidate set size for the adjacency mechanism")
      ->capture_default_str();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteText(const std::string& path, const std::string& text,
                       std::ostream& out) {
  if (path == "-") {
    out << text;
    return absl::OkStatus();
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  file << text;
  if (!file) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<SentenceRecord>> ReadCorpusAt(
    const std::string& path) {
  auto corpus = ReadCorpusFile(path);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        absl::StrCat(path, ": ", corpus.status().message()));
  }
  return corpus;
}

struct LoadedChannel {
  Vocabulary vocab;
  EmbeddingTable embeddings;
  std::optional<Channel> channel;
};

// Validates the mechanism flags before reading anything else. The channel is
// only built when an epsilon was given.
absl::StatusOr<LoadedChannel> LoadChannel(const MechanismFlags& flags,
                                          uint64_t seed, bool need_channel,
                                          const Logger& log) {
  MechanismConfig config;
  TOKENRECON_ASSIGN_OR_RETURN(config.kind, ParseMechanismKind(flags.mechanism));
  config.epsilon = flags.epsilon;
  config.adjacency_size = flags.adjacency_size;
  config.seed = seed;
  if (need_channel && !(flags.epsilon > 0.0 && std::isfinite(flags.epsilon))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "--epsilon must be a positive finite number, got ", flags.epsilon));
  }
  if (config.adjacency_size < 1) {
    return absl::InvalidArgumentError("--adjacency-size must be >= 1");
  }
  LoadedChannel loaded;
  auto table = LoadEmbeddingFile(flags.embeddings);
  if (!table.ok()) {
    return absl::Status(table.status().code(),
                        absl::StrCat(flags.embeddings, ": ",
                                     table.status().message()));
  }
  loaded.vocab = std::move(table->first);
  loaded.embeddings = std::move(table->second);
  log.Info("loaded ", loaded.vocab.size(), " embeddings of dimension ",
           loaded.embeddings.dim());
  if (need_channel || flags.epsilon > 0.0) {
    TOKENRECON_RETURN_IF_ERROR(config.Validate(loaded.vocab.size()));
    TOKENRECON_ASSIGN_OR_RETURN(Channel channel,
                                BuildChannel(loaded.embeddings, config));
    loaded.channel = std::move(channel);
  }
  return loaded;
}

std::string ReconstructionsJsonl(
    const std::vector<SentenceRecord>& records,
    const std::vector<std::vector<std::string>>& reconstructed) {
  std::string text;
  for (size_t i = 0; i < records.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = records[i].id;
    j["reconstructed"] = reconstructed[i];
    absl::StrAppend(&text, j.dump(), "\n");
  }
  return text;
}

absl::StatusOr<std::unique_ptr<ContextScorer>> MakeNgram(
    const std::vector<SentenceRecord>& training, int order, double smoothing) {
  TOKENRECON_ASSIGN_OR_RETURN(NgramScorer model,
                              NgramTrain(training, order, smoothing));
  return std::unique_ptr<ContextScorer>(
      std::make_unique<NgramScorer>(std::move(model)));
}

absl::Status RunSanitize(const SanitizeFlags& flags, const GlobalFlags& global,
                         std::ostream& out, const Logger& log) {
  TOKENRECON_ASSIGN_OR_RETURN(LoadedChannel loaded,
                              LoadChannel(flags.mech, global.seed, true, log));
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> corpus,
                              ReadCorpusAt(flags.input));
  log.Info("sanitizing ", corpus.size(), " sentences at epsilon ",
           flags.mech.epsilon);
  TOKENRECON_ASSIGN_OR_RETURN(
      std::vector<SentenceRecord> sanitized,
      SanitizeCorpus(corpus, loaded.vocab, *loaded.channel, global.seed,
                     ResolveThreads(global.threads)));
  std::stringstream text;
  WriteCorpus(sanitized, text);
  return WriteText(flags.output, text.str(), out);
}

absl::Status RunAttack(const AttackFlags& flags, const GlobalFlags& global,
                       std::ostream& out, const Logger& log) {
  const bool needs_shadow =
      flags.method == kMethodBayes || flags.method == kMethodContextualBayes;
  if (needs_shadow && flags.shadow.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--method ", flags.method, " requires --shadow"));
  }
  if (flags.k < 1) return absl::InvalidArgumentError("--k must be >= 1");
  if (flags.smoothing < 0.0) {
    return absl::InvalidArgumentError("--smoothing must be >= 0");
  }
  const bool inversion = flags.method == kMethodEmbeddingInversion;
  TOKENRECON_ASSIGN_OR_RETURN(
      LoadedChannel loaded,
      LoadChannel(flags.mech, global.seed, !inversion, log));
  const Vocabulary& vocab = loaded.vocab;
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> records,
                              ReadCorpusAt(flags.input));

  AttackSetup setup;
  setup.vocab = &vocab;
  setup.embeddings = &loaded.embeddings;
  setup.threads = ResolveThreads(global.threads);
  setup.k = flags.k;
  if (loaded.channel.has_value()) setup.channel = &*loaded.channel;

  PriorModel prior;
  std::unique_ptr<ContextScorer> scorer;
  std::shared_ptr<const DetectorClient> client;
  AsrReport header;
  header.method = flags.method;
  header.epsilon = flags.mech.epsilon;

  if (inversion) {
    setup.kind = AttackKind::kEmbeddingInversion;
  } else if (flags.method == kMethodOptimal) {
    // The theoretical prior: token frequencies of the attacked originals.
    TOKENRECON_ASSIGN_OR_RETURN(prior, EstimatePrior(records, vocab));
    setup.kind = AttackKind::kContextFree;
  } else {
    TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> shadow,
                                ReadCorpusAt(flags.shadow));
    for (SentenceRecord& r : shadow) r.sanitized.reset();
    PriorOptions options;
    options.mode = PriorMode::kShadowSmoothed;
    options.smoothing = flags.smoothing;
    TOKENRECON_ASSIGN_OR_RETURN(prior, EstimatePrior(shadow, vocab, options));
    header.smoothing = flags.smoothing;
    log.Info("shadow prior from ", shadow.size(), " sentences, alpha ",
             prior.alpha());
    setup.kind = AttackKind::kContextFree;
    if (flags.method == kMethodContextualBayes) {
      setup.kind = AttackKind::kContextual;
      header.k = flags.k;
      if (flags.scorer == "constant") {
        scorer = std::make_unique<ConstantScorer>();
      } else if (flags.scorer == "ngram") {
        TOKENRECON_ASSIGN_OR_RETURN(
            std::vector<SentenceRecord> training,
            SanitizeCorpus(shadow, vocab, *loaded.channel,
                           DeriveSeed(global.seed, kShadowSanitizeKey),
                           setup.threads));
        TOKENRECON_ASSIGN_OR_RETURN(
            scorer,
            MakeNgram(training, flags.ngram_order, flags.ngram_smoothing));
      } else {
        DetectorClientOptions options;
        options.base_url = ResolveDetectorUrl(flags.detector_url);
        if (options.base_url.empty()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "--scorer detector requires --detector-url or ",
              kDetectorUrlEnv));
        }
        TOKENRECON_ASSIGN_OR_RETURN(DetectorClient c,
                                    DetectorClient::Create(options));
        TOKENRECON_RETURN_IF_ERROR(c.Health());
        TOKENRECON_ASSIGN_OR_RETURN(
            std::vector<DetectorSample> samples,
            BuildDetectorSamples(shadow, vocab, *loaded.channel, prior,
                                 flags.replications,
                                 DeriveSeed(global.seed, kDetectorSamplesKey),
                                 setup.threads));
        log.Info("training detector on ", samples.size(), " samples");
        TOKENRECON_ASSIGN_OR_RETURN(TrainResult trained,
                                    c.Train(samples, flags.epochs));
        log.Info("detector model ", trained.model_id, " train accuracy ",
                 trained.train_accuracy);
        client = std::make_shared<const DetectorClient>(std::move(c));
        scorer = std::make_unique<DetectorScorer>(client, trained.model_id);
      }
      setup.scorer = scorer.get();
    }
  }
  setup.prior = &prior;

  TOKENRECON_ASSIGN_OR_RETURN(auto reconstructed,
                              ReconstructCorpus(records, setup));
  TOKENRECON_ASSIGN_OR_RETURN(AsrReport report,
                              ComputeAsr(records, reconstructed));
  report.method = header.method;
  report.epsilon = header.epsilon;
  report.k = header.k;
  report.smoothing = header.smoothing;
  report.seed = global.seed;
  log.Info(flags.method, " asr ", report.asr, " (", report.matched, "/",
           report.total, ")");
  if (!flags.output.empty()) {
    TOKENRECON_RETURN_IF_ERROR(WriteText(
        flags.output, ReconstructionsJsonl(records, reconstructed), out));
  }
  nlohmann::ordered_json spec;
  spec["command"] = "attack";
  spec["method"] = flags.method;
  spec["input"] = flags.input;
  return WriteText(flags.report, ReportToJson(spec, {report}), out);
}

absl::Status RunBound(const BoundFlags& flags, const GlobalFlags& global,
                      std::ostream& out, const Logger& log) {
  if (flags.k < 1) return absl::InvalidArgumentError("--k must be >= 1");
  TOKENRECON_ASSIGN_OR_RETURN(LoadedChannel loaded,
                              LoadChannel(flags.mech, global.seed, true, log));
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> records,
                              ReadCorpusAt(flags.input));
  TOKENRECON_ASSIGN_OR_RETURN(PriorModel prior,
                              EstimatePrior(records, loaded.vocab));
  const int threads = ResolveThreads(global.threads);
  AsrReport report;
  if (flags.type == "context-free") {
    TOKENRECON_ASSIGN_OR_RETURN(
        report, ContextFreeBound(records, loaded.vocab, *loaded.channel, prior,
                                 threads));
  } else {
    std::unique_ptr<ContextScorer> scorer;
    if (flags.scorer == "constant") {
      scorer = std::make_unique<ConstantScorer>();
    } else {
      TOKENRECON_ASSIGN_OR_RETURN(
          scorer, MakeNgram(records, flags.ngram_order, flags.ngram_smoothing));
    }
    TOKENRECON_ASSIGN_OR_RETURN(
        report, ContextualKBound(records, loaded.vocab, *loaded.channel, prior,
                                 *scorer, flags.k, threads));
    report.k = flags.k;
  }
  report.seed = global.seed;
  log.Info(report.method, " asr ", report.asr, " (", report.matched, "/",
           report.total, ")");
  nlohmann::ordered_json spec;
  spec["command"] = "bound";
  spec["type"] = flags.type;
  spec["input"] = flags.input;
  return WriteText(flags.report, ReportToJson(spec, {report}), out);
}

absl::Status RunSweepCommand(const SweepFlags& flags, const GlobalFlags& global,
                             bool seed_given, std::ostream& out,
                             const Logger& log) {
  TOKENRECON_ASSIGN_OR_RETURN(std::string text, ReadFile(flags.spec));
  nlohmann::json json = nlohmann::json::parse(text, nullptr, false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(flags.spec, ": not valid JSON"));
  }
  TOKENRECON_ASSIGN_OR_RETURN(SweepSpec spec, SweepSpecFromJson(json));
  if (!flags.epsilons.empty()) spec.epsilons = flags.epsilons;
  if (seed_given) spec.seed = global.seed;
  if (flags.timing) spec.timing = true;
  if (!flags.shadow.empty()) spec.shadow_path = flags.shadow;
  TOKENRECON_RETURN_IF_ERROR(spec.Validate());

  auto table = LoadEmbeddingFile(flags.embeddings);
  if (!table.ok()) {
    return absl::Status(table.status().code(),
                        absl::StrCat(flags.embeddings, ": ",
                                     table.status().message()));
  }
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> corpus,
                              ReadCorpusAt(flags.corpus));
  std::optional<std::vector<SentenceRecord>> misaligned;
  if (!spec.shadow_path.empty()) {
    TOKENRECON_ASSIGN_OR_RETURN(misaligned, ReadCorpusAt(spec.shadow_path));
  }
  log.Info("sweeping ", spec.epsilons.size(), " epsilon values over ",
           corpus.size(), " sentences");
  TOKENRECON_ASSIGN_OR_RETURN(
      std::vector<AsrReport> results,
      RunSweep(spec, corpus, table->first, table->second,
               misaligned ? &*misaligned : nullptr, global.threads));
  for (const AsrReport& r : results) {
    if (!r.error.empty()) log.Warning(r.method, " at epsilon ", r.epsilon,
                                      ": ", r.error);
  }
  if (!flags.csv.empty()) {
    TOKENRECON_RETURN_IF_ERROR(WriteText(flags.csv, ReportToCsv(results), out));
  }
  return WriteText(flags.output, ReportToJson(SweepSpecToJson(spec), results),
                   out);
}

absl::Status RunOracle(const OracleFlags& flags, const GlobalFlags& global,
                       std::ostream& out, const Logger& log) {
  if (flags.vocab_size < 1 || flags.context_size < 1 || flags.trials < 1) {
    return absl::InvalidArgumentError(
        "--vocab-size, --context-size and --trials must be >= 1");
  }
  const double strategies =
      std::pow(static_cast<double>(flags.vocab_size),
               static_cast<double>(flags.vocab_size) * flags.context_size);
  if (strategies > static_cast<double>(kMaxStrategies)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "contextual enumeration needs ", strategies,
        " strategies; the limit is ", kMaxStrategies));
  }
  RngStream rng(DeriveSeed(global.seed, kOracleKey));
  int optimal = 0;
  for (int t = 0; t < flags.trials; ++t) {
    const JointDistribution joint = RandomJoint(
        flags.vocab_size, flags.vocab_size, flags.context_size, rng);
    bool ok = true;
    for (bool contextual : {false, true}) {
      TOKENRECON_ASSIGN_OR_RETURN(double best,
                                  EnumerateBestStrategy(joint, contextual));
      TOKENRECON_ASSIGN_OR_RETURN(double attack,
                                  AttackExpectedAccuracy(joint, contextual));
      if (std::abs(best - attack) > 1e-12) {
        log.Warning("trial ", t, (contextual ? " contextual" : " context-free"),
                    ": attack ", attack, " vs best ", best);
        ok = false;
      }
    }
    optimal += ok;
  }
  out << optimal << "/" << flags.trials << " optimal\n";
  if (optimal != flags.trials) {
    return absl::InternalError("attack fell short of the best strategy");
  }
  return absl::OkStatus();
}

absl::Status RunSamples(const SamplesFlags& flags, const GlobalFlags& global,
                        std::ostream& out, const Logger& log) {
  TOKENRECON_ASSIGN_OR_RETURN(LoadedChannel loaded,
                              LoadChannel(flags.mech, global.seed, true, log));
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<SentenceRecord> shadow,
                              ReadCorpusAt(flags.shadow));
  for (SentenceRecord& r : shadow) r.sanitized.reset();
  PriorOptions options;
  options.mode = PriorMode::kShadowSmoothed;
  options.smoothing = flags.smoothing;
  TOKENRECON_ASSIGN_OR_RETURN(PriorModel prior,
                              EstimatePrior(shadow, loaded.vocab, options));
  TOKENRECON_ASSIGN_OR_RETURN(
      std::vector<DetectorSample> samples,
      BuildDetectorSamples(shadow, loaded.vocab, *loaded.channel, prior,
                           flags.replications,
                           DeriveSeed(global.seed, kDetectorSamplesKey),
                           ResolveThreads(global.threads)));
  log.Info("built ", samples.size(), " detector samples");
  std::stringstream text;
  WriteDetectorSamples(samples, text);
  return WriteText(flags.output, text.str(), out);
}

int ExitCode(const absl::Status& status) {
  if (status.ok()) return 0;
  return status.code() == absl::StatusCode::kInvalidArgument ? 1 : 2;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Token reconstruction attacks against word-level metric "
               "differential privacy",
               "tokenrecon");
  app.set_version_flag("--version", TOKENRECON_VERSION);
  app.require_subcommand(1);

  GlobalFlags global;
  auto* seed_opt = app.add_option("--seed", global.seed, "Random seed")
                       ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads; 0 uses every available core")
      ->capture_default_str();
  app.add_option("--log-level", global.log_level, "debug|info|warning|error")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}))
      ->capture_default_str();

  SanitizeFlags sanitize;
  auto* cmd_sanitize = app.add_subcommand("sanitize", "Sanitize a corpus");
  cmd_sanitize->add_option("--input", sanitize.input, "Corpus JSONL")
      ->required();
  cmd_sanitize->add_option("--output", sanitize.output, "Output JSONL or -")
      ->capture_default_str();
  AddMechanismOptions(cmd_sanitize, sanitize.mech, true);

  AttackFlags attack;
  auto* cmd_attack =
      app.add_subcommand("attack", "Reconstruct sanitized tokens");
  cmd_attack->add_option("--input", attack.input, "Sanitized corpus JSONL")
      ->required();
  cmd_attack->add_option("--method", attack.method)
      ->required()
      ->check(CLI::IsMember({kMethodOptimal, kMethodBayes,
                             kMethodContextualBayes,
                             kMethodEmbeddingInversion}));
  cmd_attack->add_option("--shadow", attack.shadow, "Shadow corpus JSONL");
  cmd_attack->add_option("--k", attack.k, "Candidate set size")
      ->capture_default_str();
  cmd_attack->add_option("--scorer", attack.scorer)
      ->check(CLI::IsMember({"ngram", "detector", "constant"}))
      ->capture_default_str();
  cmd_attack->add_option("--detector-url", attack.detector_url,
                         absl::StrCat("Detector service URL; ",
                                      kDetectorUrlEnv, " takes precedence"));
  cmd_attack->add_option("--ngram-order", attack.ngram_order)
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  cmd_attack->add_option("--ngram-smoothing", attack.ngram_smoothing)
      ->capture_default_str();
  cmd_attack->add_option("--smoothing", attack.smoothing,
                         "Prior smoothing in units of 1/alpha")
      ->capture_default_str();
  cmd_attack->add_option("--replications", attack.replications,
                         "Sanitized copies per shadow sentence for detector "
                         "training")
      ->capture_default_str();
  cmd_attack->add_option("--epochs", attack.epochs)->capture_default_str();
  cmd_attack->add_option("--output", attack.output,
                         "Reconstructions JSONL or -");
  cmd_attack->add_option("--report", attack.report, "Report JSON or -")
      ->capture_default_str();
  AddMechanismOptions(cmd_attack, attack.mech, false);

  BoundFlags bound;
  auto* cmd_bound =
      app.add_subcommand("bound", "Empirical attack success bounds");
  cmd_bound->add_option("--input", bound.input, "Sanitized corpus JSONL")
      ->required();
  cmd_bound->add_option("--type", bound.type)
      ->check(CLI::IsMember({"context-free", "contextual-k"}))
      ->capture_default_str();
  cmd_bound->add_option("--k", bound.k)->capture_default_str();
  cmd_bound->add_option("--scorer", bound.scorer)
      ->check(CLI::IsMember({"ngram", "constant"}))
      ->capture_default_str();
  cmd_bound->add_option("--ngram-order", bound.ngram_order)
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  cmd_bound->add_option("--ngram-smoothing", bound.ngram_smoothing)
      ->capture_default_str();
  cmd_bound->add_option("--report", bound.report, "Report JSON or -")
      ->capture_default_str();
  AddMechanismOptions(cmd_bound, bound.mech, true);

  SweepFlags sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Run an experiment grid");
  cmd_sweep->add_option("--spec", sweep.spec, "Sweep spec JSON")->required();
  cmd_sweep->add_option("--corpus", sweep.corpus, "Corpus JSONL")->required();
  cmd_sweep->add_option("--embeddings", sweep.embeddings)->required();
  cmd_sweep->add_option("--shadow", sweep.shadow,
                        "Misaligned shadow corpus JSONL");
  cmd_sweep->add_option("--epsilon", sweep.epsilons,
                        "Overrides the spec's epsilon grid");
  cmd_sweep->add_option("--output", sweep.output, "Report JSON or -")
      ->capture_default_str();
  cmd_sweep->add_option("--csv", sweep.csv, "Also write a CSV report");
  cmd_sweep->add_flag("--timing", sweep.timing,
                      "Record wall-clock time per cell");

  OracleFlags oracle;
  auto* cmd_oracle = app.add_subcommand(
      "oracle", "Check the attacks against exhaustive strategy search");
  cmd_oracle->add_option("--vocab-size", oracle.vocab_size)
      ->capture_default_str();
  cmd_oracle->add_option("--context-size", oracle.context_size)
      ->capture_default_str();
  cmd_oracle->add_option("--trials", oracle.trials)->capture_default_str();

  SamplesFlags samples;
  auto* cmd_samples = app.add_subcommand(
      "samples", "Build detector training samples from a shadow corpus");
  cmd_samples->add_option("--shadow", samples.shadow, "Shadow corpus JSONL")
      ->required();
  cmd_samples->add_option("--replications", samples.replications)
      ->capture_default_str();
  cmd_samples->add_option("--smoothing", samples.smoothing)
      ->capture_default_str();
  cmd_samples->add_option("--output", samples.output, "Samples JSONL or -")
      ->capture_default_str();
  AddMechanismOptions(cmd_samples, samples.mech, true);

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  LogLevel level = LogLevel::kInfo;
  if (global.log_level == "debug") level = LogLevel::kDebug;
  if (global.log_level == "warning") level = LogLevel::kWarning;
  if (global.log_level == "error") level = LogLevel::kError;
  const Logger log(err, level);
  log.Debug("seed ", global.seed, ", threads ",
            ResolveThreads(global.threads));

  absl::Status status;
  if (cmd_sanitize->parsed()) {
    status = RunSanitize(sanitize, global, out, log);
  } else if (cmd_attack->parsed()) {
    status = RunAttack(attack, global, out, log);
  } else if (cmd_bound->parsed()) {
    status = RunBound(bound, global, out, log);
  } else if (cmd_sweep->parsed()) {
    status = RunSweepCommand(sweep, global, seed_opt->count() > 0, out, log);
  } else if (cmd_oracle->parsed()) {
    status = RunOracle(oracle, global, out, log);
  } else if (cmd_samples->parsed()) {
    status = RunSamples(samples, global, out, log);
  }
  if (!status.ok()) err << "error: " << status.message() << "\n";
  return ExitCode(status);
}

}  // namespace tokenrecon
