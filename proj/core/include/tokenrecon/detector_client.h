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

#ifndef TOKENRECON_DETECTOR_CLIENT_H_
#define TOKENRECON_DETECTOR_CLIENT_H_

#include <memory>
#include <string>
#include "absl/strings/string_view.h"
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tokenrecon/context.h"
#include "tokenrecon/detector.h"

namespace tokenrecon {

// Environment variable that overrides the detector base URL.
inline constexpr char kDetectorUrlEnv[] = "TOKENRECON_DETECTOR_URL";

struct SequencePair {
  std::vector<std::string> seq_a;
  std::vector<std::string> seq_b;
};

struct TrainResult {
  std::string model_id;
  double train_accuracy = 0.0;
};

struct DetectorClientOptions {
  // "http://host:port" (a trailing slash is ignored).
  std::string base_url;
  // Upper bound on pairs per /score request.
  int max_batch = 256;
  double timeout_seconds = 30.0;
  // Train requests may take much longer than scoring.
  double train_timeout_seconds = 3600.0;
};

// HTTP+JSON client for the detector service:
//   GET  /health -> {"status": "ok"}
//   GET  /ready  -> 200 once a model is loaded, 503 before
//   POST /train  {"samples": [...], "epochs": int, "learning_rate": real}
//                -> {"model_id": string, "train_accuracy": real}
//   POST /score  {"model_id": string, "pairs": [{"seq_a", "seq_b"}]}
//                -> {"probs": [real]}
// Score requests are split into batches of at most max_batch pairs; a 413
// reply halves the batch and retries. Transport failures map to Unavailable.
class DetectorClient {
 public:
  static absl::StatusOr<DetectorClient> Create(DetectorClientOptions options);

  DetectorClient(DetectorClient&&) noexcept;
  DetectorClient& operator=(DetectorClient&&) noexcept;
  ~DetectorClient();

  const DetectorClientOptions& options() const { return options_; }

  absl::Status Health() const;
  absl::Status Ready() const;
  absl::StatusOr<TrainResult> Train(const std::vector<DetectorSample>& samples,
                                    int epochs = 3,
                                    double learning_rate = 5e-5) const;
  absl::StatusOr<std::vector<double>> Score(
      absl::string_view model_id, const std::vector<SequencePair>& pairs) const;

 private:
  struct Endpoint;
  DetectorClient(DetectorClientOptions options,
                 std::unique_ptr<Endpoint> endpoint);

  DetectorClientOptions options_;
  std::unique_ptr<Endpoint> endpoint_;
};

// Resolves the detector URL: the environment override wins over `flag_value`.
std::string ResolveDetectorUrl(absl::string_view flag_value);

// Context scorer backed by a trained detector: score(c, x', y) is the
// probability of label 1 for the pair (f(c, y), f(c, x')).
class DetectorScorer final : public ContextScorer {
 public:
  DetectorScorer(std::shared_ptr<const DetectorClient> client,
                 std::string model_id)
      : client_(std::move(client)), model_id_(std::move(model_id)) {}

  absl::StatusOr<double> Score(const ContextWindow& window,
                               absl::string_view candidate,
                               absl::string_view observed) const override;
  absl::StatusOr<std::vector<double>> ScoreBatch(
      const ContextWindow& window, std::span<const std::string> candidates,
      absl::string_view observed) const override;

 private:
  std::shared_ptr<const DetectorClient> client_;
  std::string model_id_;
};

}  // namespace tokenrecon

#endif  // TOKENRECON_DETECTOR_CLIENT_H_
