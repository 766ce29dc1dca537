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

#include "tokenrecon/joint.h"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/match.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

namespace {

constexpr double kTolerance = 1e-12;
constexpr char kContextPrefix[] = "ctx";

bool SumsToOne(const std::vector<double>& v) {
  double sum = 0.0;
  for (double p : v) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= kTolerance;
}

// Dirichlet(1) draw: normalized exponentials.
std::vector<double> RandomSimplex(int n, RngStream& rng) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& p : v) {
    double u = rng.NextUniform();
    while (u <= 0.0) u = rng.NextUniform();
    p = -std::log(u);
    sum += p;
  }
  for (double& p : v) p /= sum;
  return v;
}

}  // namespace

absl::Status JointDistribution::Validate() const {
  const int nx = num_x(), ny = num_y(), nc = num_c();
  if (nx < 1 || ny < 1 || nc < 1) {
    return absl::InvalidArgumentError("joint needs non-empty X, Y and C");
  }
  if (!SumsToOne(px)) return absl::InvalidArgumentError("Pr(X) not normalized");
  if (static_cast<int>(channel.size()) != nx ||
      static_cast<int>(pc.size()) != nx) {
    return absl::InvalidArgumentError("joint shape mismatch");
  }
  for (int x = 0; x < nx; ++x) {
    if (static_cast<int>(channel[x].size()) != ny || !SumsToOne(channel[x])) {
      return absl::InvalidArgumentError(
          absl::StrCat("Pr(Y|x=", x, ") not normalized"));
    }
    if (static_cast<int>(pc[x].size()) != ny) {
      return absl::InvalidArgumentError("joint shape mismatch");
    }
    for (int y = 0; y < ny; ++y) {
      if (static_cast<int>(pc[x][y].size()) != nc || !SumsToOne(pc[x][y])) {
        return absl::InvalidArgumentError(
            absl::StrCat("Pr(C|x=", x, ",y=", y, ") not normalized"));
      }
    }
  }
  return absl::OkStatus();
}

Vocabulary JointDistribution::MakeVocabulary() const {
  return Vocabulary::Numbered(vocab_size(), "t");
}

absl::StatusOr<Channel> JointDistribution::MakeChannel() const {
  TOKENRECON_RETURN_IF_ERROR(Validate());
  const int n = vocab_size();
  std::vector<Channel::Row> rows(n);
  for (int x = 0; x < n; ++x) {
    Channel::Row& row = rows[x];
    for (int y = 0; y < num_y(); ++y) {
      const double p =
          x < num_x() ? channel[x][y] : 1.0 / static_cast<double>(num_y());
      row.candidates.push_back(y);
      row.logprobs.push_back(p > 0.0 ? std::log(p)
                                     : -std::numeric_limits<double>::infinity());
    }
  }
  MechanismConfig config;
  config.kind = MechanismKind::kFullVocab;
  return Channel::FromRows(config, n, std::move(rows));
}

absl::StatusOr<PriorModel> JointDistribution::MakePrior() const {
  std::vector<double> p(vocab_size(), 0.0);
  for (int x = 0; x < num_x(); ++x) p[x] = px[x];
  return PriorModel::FromProbabilities(std::move(p));
}

std::vector<std::string> JointDistribution::ObservationSentence(int y,
                                                                int c) const {
  return {absl::StrCat("t", y), ContextToken(c)};
}

std::string ContextToken(int c) { return absl::StrCat(kContextPrefix, c); }

JointDistribution RandomJoint(int num_x, int num_y, int num_c,
                              RngStream& rng) {
  JointDistribution joint;
  joint.px = RandomSimplex(num_x, rng);
  joint.channel.resize(num_x);
  joint.pc.resize(num_x);
  for (int x = 0; x < num_x; ++x) {
    joint.channel[x] = RandomSimplex(num_y, rng);
    joint.pc[x].resize(num_y);
    for (int y = 0; y < num_y; ++y) joint.pc[x][y] = RandomSimplex(num_c, rng);
  }
  return joint;
}

JointDistribution RandomIndependentContextJoint(int num_x, int num_y,
                                                int num_c, RngStream& rng) {
  JointDistribution joint = RandomJoint(num_x, num_y, 1, rng);
  std::vector<std::vector<double>> by_y(num_y);
  for (int y = 0; y < num_y; ++y) by_y[y] = RandomSimplex(num_c, rng);
  for (int x = 0; x < num_x; ++x) {
    for (int y = 0; y < num_y; ++y) joint.pc[x][y] = by_y[y];
  }
  return joint;
}

JointDistribution ContextFreeJoint(std::vector<double> px,
                                   std::vector<std::vector<double>> channel) {
  JointDistribution joint;
  joint.px = std::move(px);
  joint.channel = std::move(channel);
  joint.pc.resize(joint.num_x());
  for (auto& row : joint.pc) {
    row.assign(joint.num_y(), std::vector<double>{1.0});
  }
  return joint;
}

ExactJointScorer::ExactJointScorer(const JointDistribution& joint)
    : joint_(joint), vocab_(joint.MakeVocabulary()) {}

absl::StatusOr<double> ExactJointScorer::Score(
    const ContextWindow& window, absl::string_view candidate,
    absl::string_view observed) const {
  const auto sentence = window.sentence();
  absl::string_view context;
  int others = 0;
  for (size_t i = 0; i < sentence.size(); ++i) {
    if (i == window.position()) continue;
    context = sentence[i];
    ++others;
  }
  int c = 0;
  if (others != 1 || !absl::StartsWith(context, kContextPrefix) ||
      !absl::SimpleAtoi(context.substr(3), &c) || c < 0 ||
      c >= joint_.num_c()) {
    return absl::InvalidArgumentError(
        "exact joint scorer expects a single context symbol ctx<k>");
  }
  TOKENRECON_ASSIGN_OR_RETURN(TokenId x, vocab_.Lookup(candidate));
  TOKENRECON_ASSIGN_OR_RETURN(TokenId y, vocab_.Lookup(observed));
  if (y >= joint_.num_y()) {
    return absl::InvalidArgumentError("observed token outside Y");
  }
  // Padding originals never occur; any finite score works for them.
  if (x >= joint_.num_x()) return 0.0;
  return joint_.pc[x][y][c];
}

}  // namespace tokenrecon
