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

#ifndef LCMC_HTTP_BACKEND_HPP_
#define LCMC_HTTP_BACKEND_HPP_

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcmc/providers.hpp"
#include "lcmc/wire.hpp"

namespace lcmc {

struct HttpBackendOptions {
  std::string base_url;  // e.g. "http://127.0.0.1:8000"
  std::chrono::seconds timeout{600};
  int max_in_flight = 2;
  /// Extra attempts after a transport failure; HTTP error statuses are
  /// never retried.
  int max_retries = 2;
  std::chrono::milliseconds backoff{200};
};

/// Client for the model service. Usable from several threads at once; the
/// number of concurrent requests is capped at `max_in_flight`.
class HttpBackend : public ExtractorProvider, public GeneratorProvider {
 public:
  explicit HttpBackend(HttpBackendOptions options);
  ~HttpBackend() override;

  std::string caption(const ImageBuffer& img) override;
  EdgeMap edges(const ImageBuffer& img, std::uint8_t threshold) override;
  PoseMap pose(const ImageBuffer& img) override;
  ImageBuffer generate(const GenerationRequest& request) override;

  wire::MetricValues metrics(const std::vector<ImageBuffer>& reference,
                             const std::vector<ImageBuffer>& test,
                             const std::vector<std::string>& captions = {});

  /// POSTs `body` to `path` and returns the parsed JSON reply.
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

 private:
  HttpBackendOptions options_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

}  // namespace lcmc

#endif  // LCMC_HTTP_BACKEND_HPP_
