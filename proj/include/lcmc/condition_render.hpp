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

#ifndef LCMC_CONDITION_RENDER_HPP_
#define LCMC_CONDITION_RENDER_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "lcmc/container.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"
#include "lcmc/texture_codec.hpp"

namespace lcmc {

/// Conditioning inputs for one generation request.
struct ConditionSet {
  std::string prompt;
  std::optional<ImageBuffer> structure_image;
  StructureVariant structure_kind = StructureVariant::kNone;
  std::optional<ImageBuffer> texture_image;

  bool operator==(const ConditionSet&) const = default;
};

/// COCO-18 limb table (0-based keypoint indices) and the matching colors
/// conventionally used for skeleton renders.
inline constexpr std::array<std::pair<int, int>, 17> kLimbPairs = {{
    {1, 2}, {1, 5}, {2, 3}, {3, 4}, {5, 6}, {6, 7}, {1, 8}, {8, 9}, {9, 10},
    {1, 11}, {11, 12}, {12, 13}, {1, 0}, {0, 14}, {14, 16}, {0, 15}, {15, 17},
}};

inline constexpr std::array<Rgb, 18> kSkeletonColors = {{
    {255, 0, 0},   {255, 85, 0},  {255, 170, 0}, {255, 255, 0}, {170, 255, 0},
    {85, 255, 0},  {0, 255, 0},   {0, 255, 85},  {0, 255, 170}, {0, 255, 255},
    {0, 170, 255}, {0, 85, 255},  {0, 0, 255},   {85, 0, 255},  {170, 0, 255},
    {255, 0, 255}, {255, 0, 170}, {255, 0, 85},
}};

inline constexpr Rgb kFaceDotColor = {255, 255, 255};

/// Limb stroke width in pixels: 4 at 512, scaled with min(w, h), at least 1.
int limb_stroke_width(int w, int h);

/// Pixel position of a quantized keypoint: q / 100 * extent.
inline double keypoint_pixel(std::uint8_t q, int extent) {
  return dequantize_coord(q) * extent;
}

/// Black canvas; limbs as round-capped strokes between present body
/// keypoints, body joints as dots of the stroke radius, face landmarks as
/// radius-1 dots. Pixel (x, y) is painted when its integer coordinates lie
/// within the shape.
ImageBuffer render_pose(const PoseMap& p, int w, int h);

/// Nearest-neighbour upsample; edge cells white, others black.
ImageBuffer render_edges(const EdgeMap& e, int w, int h);

enum class TextureUpsample { kBilinear, kNearest };

/// Bilinear mode samples cell (r, c) at pixel (c * bw + bw / 2,
/// r * bh + bh / 2) and clamps outside the outermost centers; results are
/// computed in exact integer arithmetic, rounded half away from zero.
ImageBuffer render_texture(const TextureMap& t, int w, int h,
                           TextureUpsample mode = TextureUpsample::kBilinear);

}  // namespace lcmc

#endif  // LCMC_CONDITION_RENDER_HPP_
