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

#ifndef LCMC_PROVIDERS_HPP_
#define LCMC_PROVIDERS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "lcmc/condition_render.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"

namespace lcmc {

/// Prior extractors used on the encoder side. Implementations throw on
/// failure; the pipeline attributes the failure to the layer being built.
class ExtractorProvider {
 public:
  virtual ~ExtractorProvider() = default;

  virtual std::string caption(const ImageBuffer& img) = 0;
  /// Binary edge grid at half resolution.
  virtual EdgeMap edges(const ImageBuffer& img, std::uint8_t threshold) = 0;
  /// Detected persons; an empty map means nobody was found.
  virtual PoseMap pose(const ImageBuffer& img) = 0;
};

struct GenerationParams {
  double guidance_scale = 7.5;
  int steps = 50;
  double condition_scale = 1.0;
  std::uint64_t seed = 0;

  void validate() const;

  bool operator==(const GenerationParams&) const = default;
};

struct GenerationRequest {
  ConditionSet conditions;
  GenerationParams params;
  int width = 0;
  int height = 0;
};

class GeneratorProvider {
 public:
  virtual ~GeneratorProvider() = default;
  virtual ImageBuffer generate(const GenerationRequest& request) = 0;
};

/// Model-free extractors: a fixed caption, the Sobel fallback for edges,
/// and an optional fixed pose. Without a pose, pose() throws kExtractor.
class OfflineExtractors : public ExtractorProvider {
 public:
  explicit OfflineExtractors(std::string caption = {},
                             std::optional<PoseMap> pose = std::nullopt)
      : caption_(std::move(caption)), pose_(std::move(pose)) {}

  std::string caption(const ImageBuffer& img) override;
  EdgeMap edges(const ImageBuffer& img, std::uint8_t threshold) override;
  PoseMap pose(const ImageBuffer& img) override;

 private:
  std::string caption_;
  std::optional<PoseMap> pose_;
};

/// Deterministic generator for tests and offline runs: returns the texture
/// condition image when present, otherwise noise seeded from a hash of the
/// whole request.
class StubGenerator : public GeneratorProvider {
 public:
  ImageBuffer generate(const GenerationRequest& request) override;
};

/// FNV-1a over every field of the request that can influence the output.
std::uint64_t request_fingerprint(const GenerationRequest& request);

}  // namespace lcmc

#endif  // LCMC_PROVIDERS_HPP_
