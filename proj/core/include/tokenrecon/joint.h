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

#ifndef TOKENRECON_JOINT_H_
#define TOKENRECON_JOINT_H_

#include <algorithm>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tokenrecon/context.h"
#include "tokenrecon/mechanism.h"
#include "tokenrecon/prior.h"
#include "tokenrecon/rng.h"
#include "tokenrecon/vocabulary.h"

namespace tokenrecon {

// A fully known generative model over originals X, outputs Y and a finite
// context alphabet C:
//   Pr(x, y, c) = px[x] * channel[x][y] * pc[x][y][c].
// Used wherever the attacker is assumed to know the true distributions.
struct JointDistribution {
  std::vector<double> px;
  std::vector<std::vector<double>> channel;
  std::vector<std::vector<std::vector<double>>> pc;

  int num_x() const { return static_cast<int>(px.size()); }
  int num_y() const {
    return channel.empty() ? 0 : static_cast<int>(channel[0].size());
  }
  int num_c() const {
    return pc.empty() || pc[0].empty() ? 0 : static_cast<int>(pc[0][0].size());
  }

  // Shapes agree and every conditional sums to 1 within 1e-12.
  absl::Status Validate() const;

  double Probability(int x, int y, int c) const {
    return px[x] * channel[x][y] * pc[x][y][c];
  }
  double Probability(int x, int y) const { return px[x] * channel[x][y]; }

  // Token names. X and Y share one vocabulary of max(|X|, |Y|) tokens "t<i>";
  // originals are the first |X| ids, outputs the first |Y| ids.
  int vocab_size() const { return std::max(num_x(), num_y()); }
  Vocabulary MakeVocabulary() const;
  // Padding originals (ids >= |X|) get a uniform row over Y and zero prior.
  absl::StatusOr<Channel> MakeChannel() const;
  absl::StatusOr<PriorModel> MakePrior() const;

  // Sanitized sentence representing observation (y, c): [t<y>, ctx<c>]; the
  // attacked position is 0.
  std::vector<std::string> ObservationSentence(int y, int c) const;
};

// Random joint with Dirichlet(1) conditionals.
JointDistribution RandomJoint(int num_x, int num_y, int num_c, RngStream& rng);

// Joint whose context depends on y only, so C carries no information about X.
JointDistribution RandomIndependentContextJoint(int num_x, int num_y,
                                                int num_c, RngStream& rng);

// Context-free joint with a single context symbol.
JointDistribution ContextFreeJoint(std::vector<double> px,
                                   std::vector<std::vector<double>> channel);

std::string ContextToken(int c);

// score(c, x', y) = Pr(c | x', y) read straight from the joint. Expects the
// observation sentences produced by ObservationSentence.
class ExactJointScorer final : public ContextScorer {
 public:
  explicit ExactJointScorer(const JointDistribution& joint);

  absl::StatusOr<double> Score(const ContextWindow& window,
                               absl::string_view candidate,
                               absl::string_view observed) const override;

 private:
  const JointDistribution& joint_;
  Vocabulary vocab_;
};

}  // namespace tokenrecon

#endif  // TOKENRECON_JOINT_H_
