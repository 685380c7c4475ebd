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

#ifndef LCMC_EVAL_HPP_
#define LCMC_EVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcmc/pipeline.hpp"
#include "lcmc/wire.hpp"

namespace lcmc::eval {

/// One row of the rate table: an image reconstructed at one fidelity level.
struct RDRecord {
  std::string image_id;
  int level = 1;
  std::size_t bytes = 0;
  double bpp = 0.0;
  wire::MetricValues metrics;
};

struct EvalConfig {
  VariantChoice variant = VariantChoice::kAuto;
  /// Worker threads; 0 picks hardware concurrency capped at 8.
  int jobs = 0;
  /// Empty means offline: captions and poses come from sidecar files
  /// (<stem>.txt, <stem>.pose.json) and edges from the fallback detector.
  std::string backend_url;
  /// Requires a backend: reconstruct every level and POST /metrics.
  bool metrics = false;
  GenerationParams params;
  int max_in_flight = 2;
};

struct EvalResult {
  std::vector<RDRecord> records;  // sorted by (image_id, level)
  std::map<std::string, std::string> failures;
  std::map<std::string, int> variant_counts;
  /// Set-level metrics per level (only with `metrics`).
  std::map<int, wire::MetricValues> set_metrics;
  std::size_t images = 0;
};

inline const char* kCsvHeader = "image_id,level,bytes,bpp,fid,clipsim,dists,niqe";

/// Images (.png, .ppm) in `corpus`, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& corpus);

/// Offline extractors for one corpus image, reading its sidecars.
OfflineExtractors sidecar_extractors(const std::filesystem::path& image);

EvalResult run_eval(const std::filesystem::path& corpus, const EvalConfig& config);

void write_csv(std::ostream& out, const std::vector<RDRecord>& records);
nlohmann::json summary_json(const EvalResult& result);

}  // namespace lcmc::eval

#endif  // LCMC_EVAL_HPP_
