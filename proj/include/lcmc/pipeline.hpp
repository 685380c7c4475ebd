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

#ifndef LCMC_PIPELINE_HPP_
#define LCMC_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <variant>

#include "lcmc/condition_render.hpp"
#include "lcmc/container.hpp"
#include "lcmc/error.hpp"
#include "lcmc/providers.hpp"
#include "lcmc/semantic_codec.hpp"
#include "lcmc/structure_codec.hpp"
#include "lcmc/texture_codec.hpp"

namespace lcmc {

enum class VariantChoice { kEdge, kPose, kAuto };

/// A pose is used in auto mode when some person's keypoint bounding box
/// covers at least this fraction of the image.
inline constexpr double kPoseAreaThreshold = 0.40;

/// Raised when an extractor fails; `layer()` names the layer being built.
class ExtractorError : public Error {
 public:
  ExtractorError(LayerId layer, const std::string& message)
      : Error(ErrorCode::kExtractor,
              std::string(to_string(layer)) + " layer: " + message),
        layer_(layer) {}

  LayerId layer() const { return layer_; }

 private:
  LayerId layer_;
};

struct EncodeOptions {
  VariantChoice variant = VariantChoice::kAuto;
  std::uint8_t edge_threshold = kDefaultEdgeThreshold;
  int zstd_level = zstd::kDefaultLevel;
  /// When set, edge layers are written with codec 2 through this hook.
  ExternalEdgeCodec* external_edges = nullptr;
};

/// Largest normalized keypoint bounding-box area over all persons.
double pose_coverage(const PoseMap& p);

using StructurePrior = std::variant<std::monostate, PoseMap, EdgeMap>;

struct LayeredPriors {
  SemanticPrior semantic;
  StructurePrior structure;
  std::optional<TextureMap> texture;

  bool has_structure() const { return !std::holds_alternative<std::monostate>(structure); }
  /// 1, 2 or 3: the number of leading layers present.
  int level() const;
  /// Texture without structure breaks the ladder.
  void validate() const;

  bool operator==(const LayeredPriors&) const = default;
};

struct GeneratedImage {
  ImageBuffer image;
  int fidelity_level = 1;
  GenerationParams params;
};

/// Builds the container for an image: caption, structure per `options`
/// and the 8x8 texture map, all three layers present.
LayeredBitstream encode_image(const ImageBuffer& img, ExtractorProvider& extractors,
                              const EncodeOptions& options = {});

/// Decodes layers 1..k. Throws kMissingLayer when the container holds
/// fewer than k layers.
LayeredPriors decode_layers(const LayeredBitstream& bs, int k,
                            ExternalEdgeCodec* external_edges = nullptr);
LayeredPriors decode_layers(ByteView bytes, int k,
                            ExternalEdgeCodec* external_edges = nullptr);

ConditionSet build_conditions(const LayeredPriors& priors, int w, int h,
                              TextureUpsample mode = TextureUpsample::kBilinear);

/// One generation request carrying exactly the conditions of the priors'
/// level.
GeneratedImage reconstruct(const LayeredPriors& priors, int w, int h,
                           const GenerationParams& params,
                           GeneratorProvider& generator,
                           TextureUpsample mode = TextureUpsample::kBilinear);

}  // namespace lcmc

#endif  // LCMC_PIPELINE_HPP_
