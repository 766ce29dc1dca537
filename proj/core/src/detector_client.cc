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

#include "tokenrecon/detector_client.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/match.h"
#include "absl/strings/strip.h"
#include "httplib.h"
#include "nlohmann/json.hpp"
#include "tokenrecon/status_macros.h"

namespace tokenrecon {

struct DetectorClient::Endpoint {
  explicit Endpoint(const std::string& url) : client(url) {}
  std::mutex mu;
  httplib::Client client;
};

namespace {

constexpr char kJson[] = "application/json";

absl::Status StatusFromHttp(int code, const std::string& body,
                            absl::string_view what) {
  std::string message = absl::StrCat(what, ": HTTP ", code);
  if (!body.empty()) absl::StrAppend(&message, ": ", body.substr(0, 200));
  switch (code) {
    case 400:
      return absl::InvalidArgumentError(message);
    case 404:
      return absl::NotFoundError(message);
    case 413:
      return absl::ResourceExhaustedError(message);
    case 422:
      return absl::FailedPreconditionError(message);
    case 503:
      return absl::UnavailableError(message);
    default:
      return absl::InternalError(message);
  }
}

void SetTimeout(httplib::Client& client, double seconds) {
  const auto micros = static_cast<long long>(seconds * 1e6);
  client.set_read_timeout(std::chrono::microseconds(micros));
  client.set_write_timeout(std::chrono::microseconds(micros));
}

nlohmann::json PairJson(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  return {{"seq_a", a}, {"seq_b", b}};
}

}  // namespace

absl::StatusOr<DetectorClient> DetectorClient::Create(
    DetectorClientOptions options) {
  std::string url(absl::StripSuffix(options.base_url, "/"));
  if (url.empty()) {
    return absl::InvalidArgumentError("detector URL is empty");
  }
  if (!absl::StartsWith(url, "http://")) {
    return absl::InvalidArgumentError(
        absl::StrCat("detector URL must start with http://: ", url));
  }
  if (options.max_batch < 1) {
    return absl::InvalidArgumentError("max_batch must be >= 1");
  }
  auto endpoint = std::make_unique<Endpoint>(url);
  if (!endpoint->client.is_valid()) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid detector URL: ", url));
  }
  endpoint->client.set_connection_timeout(
      std::chrono::microseconds(static_cast<long long>(
          std::min(options.timeout_seconds, 10.0) * 1e6)));
  SetTimeout(endpoint->client, options.timeout_seconds);
  options.base_url = url;
  return DetectorClient(std::move(options), std::move(endpoint));
}

DetectorClient::DetectorClient(DetectorClientOptions options,
                               std::unique_ptr<Endpoint> endpoint)
    : options_(std::move(options)), endpoint_(std::move(endpoint)) {}

DetectorClient::DetectorClient(DetectorClient&&) noexcept = default;
DetectorClient& DetectorClient::operator=(DetectorClient&&) noexcept = default;
DetectorClient::~DetectorClient() = default;

absl::Status DetectorClient::Health() const {
  std::lock_guard lock(endpoint_->mu);
  auto res = endpoint_->client.Get("/health");
  if (!res) {
    return absl::UnavailableError(
        absl::StrCat("detector unreachable at ", options_.base_url, ": ",
                     httplib::to_string(res.error())));
  }
  if (res->status != 200) return StatusFromHttp(res->status, res->body, "health");
  return absl::OkStatus();
}

absl::Status DetectorClient::Ready() const {
  std::lock_guard lock(endpoint_->mu);
  auto res = endpoint_->client.Get("/ready");
  if (!res) {
    return absl::UnavailableError(
        absl::StrCat("detector unreachable at ", options_.base_url, ": ",
                     httplib::to_string(res.error())));
  }
  if (res->status != 200) return StatusFromHttp(res->status, res->body, "ready");
  return absl::OkStatus();
}

absl::StatusOr<TrainResult> DetectorClient::Train(
    const std::vector<DetectorSample>& samples, int epochs,
    double learning_rate) const {
  nlohmann::json body;
  body["samples"] = nlohmann::json::array();
  for (const DetectorSample& s : samples) {
    nlohmann::json item = PairJson(s.seq_a, s.seq_b);
    item["label"] = s.label;
    body["samples"].push_back(std::move(item));
  }
  body["epochs"] = epochs;
  body["learning_rate"] = learning_rate;

  std::lock_guard lock(endpoint_->mu);
  SetTimeout(endpoint_->client, options_.train_timeout_seconds);
  auto res = endpoint_->client.Post("/train", body.dump(), kJson);
  SetTimeout(endpoint_->client, options_.timeout_seconds);
  if (!res) {
    return absl::UnavailableError(
        absl::StrCat("detector unreachable at ", options_.base_url, ": ",
                     httplib::to_string(res.error())));
  }
  if (res->status != 200) return StatusFromHttp(res->status, res->body, "train");
  nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("model_id") ||
      !reply["model_id"].is_string()) {
    return absl::InternalError("malformed /train reply");
  }
  TrainResult result;
  result.model_id = reply["model_id"].get<std::string>();
  if (reply.contains("train_accuracy") &&
      reply["train_accuracy"].is_number()) {
    result.train_accuracy = reply["train_accuracy"].get<double>();
  }
  return result;
}

absl::StatusOr<std::vector<double>> DetectorClient::Score(
    absl::string_view model_id, const std::vector<SequencePair>& pairs) const {
  std::vector<double> probs;
  probs.reserve(pairs.size());
  size_t batch = static_cast<size_t>(options_.max_batch);
  size_t begin = 0;
  while (begin < pairs.size()) {
    const size_t end = std::min(pairs.size(), begin + batch);
    nlohmann::json body;
    body["model_id"] = model_id;
    body["pairs"] = nlohmann::json::array();
    for (size_t i = begin; i < end; ++i) {
      body["pairs"].push_back(PairJson(pairs[i].seq_a, pairs[i].seq_b));
    }
    httplib::Result res;
    {
      std::lock_guard lock(endpoint_->mu);
      res = endpoint_->client.Post("/score", body.dump(), kJson);
    }
    if (!res) {
      return absl::UnavailableError(
          absl::StrCat("detector unreachable at ", options_.base_url, ": ",
                       httplib::to_string(res.error())));
    }
    if (res->status == 413 && batch > 1) {
      batch = std::max<size_t>(1, batch / 2);
      continue;
    }
    if (res->status != 200) {
      return StatusFromHttp(res->status, res->body, "score");
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("probs") ||
        !reply["probs"].is_array() || reply["probs"].size() != end - begin) {
      return absl::InternalError("malformed /score reply");
    }
    for (const auto& p : reply["probs"]) {
      if (!p.is_number()) return absl::InternalError("non-numeric probability");
      const double v = p.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) {
        return absl::InternalError(
            absl::StrCat("probability outside [0, 1]: ", v));
      }
      probs.push_back(v);
    }
    begin = end;
  }
  return probs;
}

std::string ResolveDetectorUrl(absl::string_view flag_value) {
  if (const char* env = std::getenv(kDetectorUrlEnv); env && *env) {
    return env;
  }
  return std::string(flag_value);
}

absl::StatusOr<double> DetectorScorer::Score(const ContextWindow& window,
                                             absl::string_view candidate,
                                             absl::string_view observed) const {
  const std::string names[] = {std::string(candidate)};
  TOKENRECON_ASSIGN_OR_RETURN(std::vector<double> scores,
                              ScoreBatch(window, names, observed));
  return scores.front();
}

absl::StatusOr<std::vector<double>> DetectorScorer::ScoreBatch(
    const ContextWindow& window, std::span<const std::string> candidates,
    absl::string_view observed) const {
  std::vector<std::string> seq_a = Substitute(window, observed);
  std::vector<SequencePair> pairs;
  pairs.reserve(candidates.size());
  for (const std::string& candidate : candidates) {
    pairs.push_back({seq_a, Substitute(window, candidate)});
  }
  return client_->Score(model_id_, pairs);
}

}  // namespace tokenrecon
