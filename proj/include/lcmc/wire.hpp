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

#ifndef LCMC_WIRE_HPP_
#define LCMC_WIRE_HPP_

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "lcmc/bytes.hpp"
#include "lcmc/image.hpp"
#include "lcmc/providers.hpp"
#include "lcmc/structure_codec.hpp"

// JSON shapes shared with the model service:
//
//   POST /caption  {image}                       -> {text}
//   POST /edges    {image, threshold}            -> {grid, width, height}
//   POST /pose     {image}                       -> {persons: [{keypoints}]}
//   POST /generate {prompt, structure_image?, texture_image?,
//                   structure_kind?, guidance_scale, steps,
//                   condition_scale, seed, width, height} -> {image}
//   POST /metrics  {reference: [image], test: [image], captions?: [text]}
//                  -> {FID, ClipSIM, DISTS, NIQE}   (each number or null)
//
// Images are base64 PNG, grids base64 of BitGrid::pack_rows(), keypoints
// [x, y, confidence] with x, y normalized to [0, 1].
namespace lcmc::wire {

/// Keypoints whose confidence exceeds this are marked present.
inline constexpr double kPresenceConfidence = 0.1;

std::string base64_encode(ByteView data);
Bytes base64_decode(std::string_view text);

std::string image_to_base64(const ImageBuffer& img);
ImageBuffer image_from_base64(std::string_view text);

nlohmann::json pose_to_json(const PoseMap& p);
/// Accepts 18 (body only) or 88 keypoints per person; entries may be null.
/// Persons without any present keypoint are dropped; coordinates outside
/// [0, 1] are clamped before quantization.
PoseMap pose_from_json(const nlohmann::json& j);

nlohmann::json edges_to_json(const EdgeMap& e);
EdgeMap edges_from_json(const nlohmann::json& j, int image_width, int image_height,
                        std::uint8_t threshold);

nlohmann::json generate_request_to_json(const GenerationRequest& r);
GenerationRequest generate_request_from_json(const nlohmann::json& j);

struct MetricValues {
  std::optional<double> fid;
  std::optional<double> clipsim;
  std::optional<double> dists;
  std::optional<double> niqe;
};

MetricValues metrics_from_json(const nlohmann::json& j);

}  // namespace lcmc::wire

#endif  // LCMC_WIRE_HPP_
