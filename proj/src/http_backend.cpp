// Copyright 2026 The LCMC Authors
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

#include "lcmc/http_backend.hpp"

#include <regex>
#include <thread>

#include <httplib.h>

#include "lcmc/error.hpp"

namespace lcmc {
namespace {

using nlohmann::json;

class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<>& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  std::counting_semaphore<>& s_;
};

}  // namespace

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  // httplib is built without TLS, so only plain http is accepted.
  static const std::regex kUrl(R"(http://[A-Za-z0-9.\-]+(:[0-9]{1,5})?/?)");
  if (!std::regex_match(options_.base_url, kUrl)) {
    throw Error(ErrorCode::kInvalidArgument,
                "backend URL must look like http://host[:port], got \"" +
                    options_.base_url + "\"");
  }
  if (options_.max_in_flight < 1) options_.max_in_flight = 1;
  in_flight_ = std::make_unique<std::counting_semaphore<>>(options_.max_in_flight);
}

HttpBackend::~HttpBackend() = default;

json HttpBackend::post(const std::string& path, const json& body) {
  SlotGuard slot(*in_flight_);
  const std::string payload = body.dump();
  std::string last_error;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff * (1 << (attempt - 1)));
    httplib::Client client(options_.base_url);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(options_.timeout);
    client.set_write_timeout(options_.timeout);
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kBackend, path + " returned HTTP " +
                                           std::to_string(res->status) + ": " +
                                           res->body.substr(0, 200));
    }
    try {
      return json::parse(res->body);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kBackend, path + " returned invalid JSON: " + e.what());
    }
  }
  throw Error(ErrorCode::kBackend,
              path + " unreachable after " + std::to_string(options_.max_retries + 1) +
                  " attempts: " + last_error);
}

std::string HttpBackend::caption(const ImageBuffer& img) {
  const json reply = post("/caption", {{"image", wire::image_to_base64(img)}});
  if (!reply.contains("text") || !reply.at("text").is_string()) {
    throw Error(ErrorCode::kBackend, "/caption reply lacks \"text\"");
  }
  return reply.at("text").get<std::string>();
}

EdgeMap HttpBackend::edges(const ImageBuffer& img, std::uint8_t threshold) {
  const json reply = post("/edges", {{"image", wire::image_to_base64(img)},
                                     {"threshold", threshold}});
  return wire::edges_from_json(reply, img.width(), img.height(), threshold);
}

PoseMap HttpBackend::pose(const ImageBuffer& img) {
  return wire::pose_from_json(post("/pose", {{"image", wire::image_to_base64(img)}}));
}

ImageBuffer HttpBackend::generate(const GenerationRequest& request) {
  const json reply = post("/generate", wire::generate_request_to_json(request));
  if (!reply.contains("image") || !reply.at("image").is_string()) {
    throw Error(ErrorCode::kBackend, "/generate reply lacks \"image\"");
  }
  return wire::image_from_base64(reply.at("image").get<std::string>());
}

wire::MetricValues HttpBackend::metrics(const std::vector<ImageBuffer>& reference,
                                        const std::vector<ImageBuffer>& test,
                                        const std::vector<std::string>& captions) {
  json body = {{"reference", json::array()}, {"test", json::array()}};
  for (const auto& img : reference) body["reference"].push_back(wire::image_to_base64(img));
  for (const auto& img : test) body["test"].push_back(wire::image_to_base64(img));
  if (!captions.empty()) body["captions"] = captions;
  return wire::metrics_from_json(post("/metrics", body));
}

}  // namespace lcmc
