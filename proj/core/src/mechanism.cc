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

#include "tokenrecon/mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tokenrecon/parallel.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(const std::vector<double>& v) {
  const double max = *std::max_element(v.begin(), v.end());
  if (max == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - max);
  return max + std::log(sum);
}

}  // namespace

absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name) {
  if (name == "full-vocab") return MechanismKind::kFullVocab;
  if (name == "adjacency") return MechanismKind::kAdjacency;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism \"", name,
                   "\" (expected full-vocab or adjacency)"));
}

absl::string_view MechanismKindName(MechanismKind kind) {
  return kind == MechanismKind::kFullVocab ? "full-vocab" : "adjacency";
}

absl::Status MechanismConfig::Validate(int vocab_size) const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be a positive finite number, got ", epsilon));
  }
  if (vocab_size < 1) return absl::InvalidArgumentError("empty vocabulary");
  if (kind == MechanismKind::kAdjacency &&
      (adjacency_size < 1 || adjacency_size > vocab_size)) {
    return absl::InvalidArgumentError(
        absl::StrCat("adjacency size must be in [1, ", vocab_size, "], got ",
                     adjacency_size));
  }
  return absl::OkStatus();
}

absl::StatusOr<Channel> Channel::FromRows(MechanismConfig config,
                                          int vocab_size,
                                          std::vector<Row> rows) {
  if (static_cast<int>(rows.size()) != vocab_size) {
    return absl::InvalidArgumentError("one channel row per token required");
  }
  Channel channel;
  channel.config_ = config;
  channel.cdf_.resize(rows.size());
  channel.columns_.resize(rows.size());
  std::vector<char> seen(vocab_size, 0);
  for (TokenId x = 0; x < vocab_size; ++x) {
    const Row& row = rows[x];
    if (row.candidates.empty() ||
        row.candidates.size() != row.logprobs.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed channel row ", x));
    }
    std::fill(seen.begin(), seen.end(), 0);
    double sum = 0.0;
    std::vector<double>& cdf = channel.cdf_[x];
    cdf.reserve(row.candidates.size());
    for (size_t j = 0; j < row.candidates.size(); ++j) {
      const TokenId y = row.candidates[j];
      if (y < 0 || y >= vocab_size || seen[y]) {
        return absl::InvalidArgumentError(
            absl::StrCat("channel row ", x, ": bad or repeated candidate ", y));
      }
      seen[y] = 1;
      if (std::isnan(row.logprobs[j]) || row.logprobs[j] > 0.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("channel row ", x, ": invalid log-probability"));
      }
      sum += std::exp(row.logprobs[j]);
      cdf.push_back(sum);
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat("channel row ", x, " sums to ", sum));
    }
  }
  for (TokenId x = 0; x < vocab_size; ++x) {
    const Row& row = rows[x];
    for (size_t j = 0; j < row.candidates.size(); ++j) {
      if (row.logprobs[j] == kNegInf) continue;
      channel.columns_[row.candidates[j]].push_back({x, row.logprobs[j]});
    }
  }
  channel.rows_ = std::move(rows);
  return channel;
}

double Channel::LogProb(TokenId x, TokenId y) const {
  const auto& col = columns_[y];
  auto it = std::lower_bound(
      col.begin(), col.end(), x,
      [](const Entry& e, TokenId token) { return e.token < token; });
  if (it == col.end() || it->token != x) return kNegInf;
  return it->logprob;
}

double Channel::Prob(TokenId x, TokenId y) const {
  return std::exp(LogProb(x, y));
}

TokenId Channel::Sample(TokenId x, RngStream& rng) const {
  const std::vector<double>& cdf = cdf_[x];
  // Scale by the row total so rounding in the last cumulative entry cannot
  // push u past the end.
  const double u = rng.NextUniform() * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  size_t index = static_cast<size_t>(it - cdf.begin());
  if (index >= cdf.size()) index = cdf.size() - 1;
  return rows_[x].candidates[index];
}

absl::StatusOr<Channel> BuildChannel(const EmbeddingTable& embeddings,
                                     const MechanismConfig& config) {
  const int n = embeddings.num_tokens();
  TOKENRECON_RETURN_IF_ERROR(config.Validate(n));
  std::vector<Channel::Row> rows(n);
  std::vector<double> dist(n);
  std::vector<TokenId> order(n);
  for (TokenId x = 0; x < n; ++x) {
    for (TokenId y = 0; y < n; ++y) {
      dist[y] = embeddings.distance(x, y, config.metric);
    }
    Channel::Row& row = rows[x];
    if (config.kind == MechanismKind::kFullVocab) {
      row.candidates.resize(n);
      std::iota(row.candidates.begin(), row.candidates.end(), 0);
    } else {
      std::iota(order.begin(), order.end(), 0);
      // x is at distance 0 with itself; placing it first guarantees
      // membership even when other tokens share its vector.
      std::swap(order[0], order[x]);
      auto closer = [&](TokenId a, TokenId b) {
        if (a == x || b == x) return a == x && b != x;
        if (dist[a] != dist[b]) return dist[a] < dist[b];
        return a < b;
      };
      std::partial_sort(order.begin(), order.begin() + config.adjacency_size,
                        order.end(), closer);
      row.candidates.assign(order.begin(),
                            order.begin() + config.adjacency_size);
    }
    row.logprobs.resize(row.candidates.size());
    for (size_t j = 0; j < row.candidates.size(); ++j) {
      row.logprobs[j] = -config.epsilon * dist[row.candidates[j]] / 2.0;
    }
    const double norm = LogSumExp(row.logprobs);
    for (double& lp : row.logprobs) lp -= norm;
  }
  return Channel::FromRows(config, n, std::move(rows));
}

TokenId SampleOutput(const Channel& channel, TokenId x, RngStream& rng) {
  return channel.Sample(x, rng);
}

absl::StatusOr<SentenceRecord> SanitizeSentence(const SentenceRecord& record,
                                                const Vocabulary& vocab,
                                                const Channel& channel,
                                                uint64_t seed) {
  if (record.sanitized.has_value()) {
    return absl::FailedPreconditionError(
        absl::StrCat("sentence ", record.id, " is already sanitized"));
  }
  TOKENRECON_RETURN_IF_ERROR(record.Validate());
  if (vocab.size() != channel.vocab_size()) {
    return absl::InvalidArgumentError(
        "vocabulary and channel sizes disagree");
  }
  SentenceRecord out = record;
  out.sanitized = record.tokens;
  for (size_t i = 0; i < record.tokens.size(); ++i) {
    if (!record.sensitive[i]) continue;
    auto x = vocab.Find(record.tokens[i]);
    if (!x) {
      return absl::NotFoundError(
          absl::StrCat("sentence ", record.id, ": token not in vocabulary: ",
                       record.tokens[i]));
    }
    RngStream rng = RngStream::ForPosition(seed, record.id,
                                           static_cast<int64_t>(i));
    (*out.sanitized)[i] = vocab.token(channel.Sample(*x, rng));
  }
  return out;
}

absl::StatusOr<std::vector<SentenceRecord>> SanitizeCorpus(
    const std::vector<SentenceRecord>& corpus, const Vocabulary& vocab,
    const Channel& channel, uint64_t seed, int threads) {
  std::vector<absl::StatusOr<SentenceRecord>> results(
      corpus.size(), absl::UnknownError("not run"));
  ParallelFor(corpus.size(), threads, [&](size_t i) {
    results[i] = SanitizeSentence(corpus[i], vocab, channel, seed);
  });
  std::vector<SentenceRecord> out;
  out.reserve(corpus.size());
  for (auto& r : results) {
    if (!r.ok()) return r.status();
    out.push_back(*std::move(r));
  }
  return out;
}

absl::StatusOr<double> DpRatioCheck(const Channel& channel,
                                    const EmbeddingTable& embeddings) {
  if (channel.config().kind != MechanismKind::kFullVocab) {
    return absl::FailedPreconditionError(
        "DP ratio audit is not applicable to adjacency channels: the "
        "guarantee only holds within shared candidate sets");
  }
  const int n = channel.vocab_size();
  if (embeddings.num_tokens() != n) {
    return absl::InvalidArgumentError(
        "embedding table and channel sizes disagree");
  }
  const double epsilon = channel.config().epsilon;
  double worst = kNegInf;
  for (TokenId x1 = 0; x1 < n; ++x1) {
    for (TokenId x2 = 0; x2 < n; ++x2) {
      const double budget =
          epsilon * embeddings.distance(x1, x2, channel.config().metric);
      for (TokenId y = 0; y < n; ++y) {
        const double lp1 = channel.LogProb(x1, y);
        const double lp2 = channel.LogProb(x2, y);
        if (lp1 == kNegInf) continue;
        // Pr(y|x1) > 0 = Pr(y|x2) is an unbounded ratio.
        const double margin = lp2 == kNegInf
                                  ? std::numeric_limits<double>::infinity()
                                  : lp1 - lp2 - budget;
        worst = std::max(worst, margin);
      }
    }
  }
  return worst;
}

}  // namespace tokenrecon
