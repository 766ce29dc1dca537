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

#include "tokenrecon/oracle.h"

#include <cmath>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tokenrecon/attack.h"
#include "tokenrecon/context.h"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

namespace {

// gain[o][x] = Pr(x, o) for every observation o.
std::vector<std::vector<double>> ObservationGains(
    const JointDistribution& joint, bool contextual) {
  std::vector<std::vector<double>> gain;
  for (int y = 0; y < joint.num_y(); ++y) {
    if (contextual) {
      for (int c = 0; c < joint.num_c(); ++c) {
        std::vector<double> g(joint.num_x());
        for (int x = 0; x < joint.num_x(); ++x) {
          g[x] = joint.Probability(x, y, c);
        }
        gain.push_back(std::move(g));
      }
    } else {
      std::vector<double> g(joint.num_x());
      for (int x = 0; x < joint.num_x(); ++x) g[x] = joint.Probability(x, y);
      gain.push_back(std::move(g));
    }
  }
  return gain;
}

}  // namespace

absl::StatusOr<double> EnumerateBestStrategy(const JointDistribution& joint,
                                             bool contextual) {
  TOKENRECON_RETURN_IF_ERROR(joint.Validate());
  const std::vector<std::vector<double>> gain =
      ObservationGains(joint, contextual);
  const size_t num_obs = gain.size();
  const uint64_t nx = static_cast<uint64_t>(joint.num_x());
  uint64_t space = 1;
  for (size_t o = 0; o < num_obs; ++o) {
    if (space > kMaxStrategies / nx) {
      return absl::OutOfRangeError(absl::StrCat(
          "strategy space |X|^", num_obs, " exceeds ", kMaxStrategies));
    }
    space *= nx;
  }

  // Odometer over sigma, digit o = sigma(o). suffix[o] holds
  // gain[o][sigma(o)] + suffix[o + 1], so after changing digit o only the
  // suffixes up to o are refreshed and every total is summed in the same
  // order, free of drift.
  std::vector<uint64_t> digit(num_obs, 0);
  std::vector<double> suffix(num_obs + 1, 0.0);
  for (size_t o = num_obs; o-- > 0;) suffix[o] = gain[o][0] + suffix[o + 1];
  double best = suffix[0];
  for (uint64_t step = 1; step < space; ++step) {
    size_t o = 0;
    while (digit[o] + 1 == nx) digit[o++] = 0;
    ++digit[o];
    for (size_t j = o + 1; j-- > 0;) {
      suffix[j] = gain[j][digit[j]] + suffix[j + 1];
    }
    if (suffix[0] > best) best = suffix[0];
  }
  return best;
}

ConditionalEntropy ConditionalEntropies(const JointDistribution& joint) {
  ConditionalEntropy h;
  for (int y = 0; y < joint.num_y(); ++y) {
    double py = 0.0;
    for (int x = 0; x < joint.num_x(); ++x) py += joint.Probability(x, y);
    for (int x = 0; x < joint.num_x(); ++x) {
      const double pxy = joint.Probability(x, y);
      if (pxy > 0.0) h.x_given_y -= pxy * std::log(pxy / py);
    }
    for (int c = 0; c < joint.num_c(); ++c) {
      double pyc = 0.0;
      for (int x = 0; x < joint.num_x(); ++x) {
        pyc += joint.Probability(x, y, c);
      }
      for (int x = 0; x < joint.num_x(); ++x) {
        const double p = joint.Probability(x, y, c);
        if (p > 0.0) h.x_given_yc -= p * std::log(p / pyc);
      }
    }
  }
  return h;
}

absl::StatusOr<double> AttackExpectedAccuracy(const JointDistribution& joint,
                                              bool contextual, int k) {
  TOKENRECON_RETURN_IF_ERROR(joint.Validate());
  const Vocabulary vocab = joint.MakeVocabulary();
  TOKENRECON_ASSIGN_OR_RETURN(Channel channel, joint.MakeChannel());
  TOKENRECON_ASSIGN_OR_RETURN(PriorModel prior, joint.MakePrior());
  const ExactJointScorer scorer(joint);
  const int top_k = k > 0 ? k : vocab.size();
  double accuracy = 0.0;
  for (int y = 0; y < joint.num_y(); ++y) {
    if (channel.column(y).empty()) continue;  // Pr(y) = 0
    if (!contextual) {
      TOKENRECON_ASSIGN_OR_RETURN(TokenId x,
                                  ReconstructContextFree(y, channel, prior));
      if (x < joint.num_x()) accuracy += joint.Probability(x, y);
      continue;
    }
    for (int c = 0; c < joint.num_c(); ++c) {
      const std::vector<std::string> sentence = joint.ObservationSentence(y, c);
      TOKENRECON_ASSIGN_OR_RETURN(ContextWindow window,
                                  ContextWindow::Create(sentence, 0));
      TOKENRECON_ASSIGN_OR_RETURN(
          TokenId x, ReconstructContextual(y, window, vocab, channel, prior,
                                           scorer, top_k));
      if (x < joint.num_x()) accuracy += joint.Probability(x, y, c);
    }
  }
  return accuracy;
}

}  // namespace tokenrecon
