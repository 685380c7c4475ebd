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

#include "lcmc/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <string>

namespace lcmc {
namespace {

template <typename F>
auto extract(LayerId layer, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ExtractorError&) {
    throw;
  } catch (const std::exception& e) {
    throw ExtractorError(layer, e.what());
  }
}

void check_encodable(const ImageBuffer& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < kMinDimension || h < kMinDimension ||
      w > std::numeric_limits<std::uint16_t>::max() ||
      h > std::numeric_limits<std::uint16_t>::max() ||
      w % TextureMap::kGrid != 0 || h % TextureMap::kGrid != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image must be between 64 and 65535 pixels per side and "
                "divisible by 8, got " + std::to_string(w) + "x" + std::to_string(h));
  }
}

}  // namespace

double pose_coverage(const PoseMap& p) {
  double best = 0.0;
  for (const auto& person : p.persons) {
    double x0 = 1.0, y0 = 1.0, x1 = 0.0, y1 = 0.0;
    bool any = false;
    for (const auto& kp : person.keypoints) {
      if (!kp.present) continue;
      any = true;
      x0 = std::min(x0, dequantize_coord(kp.qx));
      x1 = std::max(x1, dequantize_coord(kp.qx));
      y0 = std::min(y0, dequantize_coord(kp.qy));
      y1 = std::max(y1, dequantize_coord(kp.qy));
    }
    if (any) best = std::max(best, (x1 - x0) * (y1 - y0));
  }
  return best;
}

int LayeredPriors::level() const {
  if (texture) return 3;
  return has_structure() ? 2 : 1;
}

void LayeredPriors::validate() const {
  if (texture && !has_structure()) {
    throw Error(ErrorCode::kLadderViolation, "texture prior without structure prior");
  }
}

LayeredBitstream encode_image(const ImageBuffer& img, ExtractorProvider& extractors,
                              const EncodeOptions& options) {
  check_encodable(img);
  LayeredBitstream bs;
  bs.header.width = static_cast<std::uint16_t>(img.width());
  bs.header.height = static_cast<std::uint16_t>(img.height());

  const SemanticPrior semantic{
      extract(LayerId::kSemantic, [&] { return extractors.caption(img); })};
  EncodedPayload sem = encode_semantic(semantic, options.zstd_level);
  bs.layers.push_back({LayerId::kSemantic, sem.codec_id, std::move(sem.bytes)});

  std::optional<PoseMap> pose;
  if (options.variant == VariantChoice::kPose) {
    pose = extract(LayerId::kStructure, [&] { return extractors.pose(img); });
    if (pose->persons.empty()) {
      throw ExtractorError(LayerId::kStructure, "pose extractor found no person");
    }
  } else if (options.variant == VariantChoice::kAuto) {
    try {
      PoseMap detected = extractors.pose(img);
      if (!detected.persons.empty() && pose_coverage(detected) >= kPoseAreaThreshold) {
        pose = std::move(detected);
      }
    } catch (const std::exception&) {
      // No usable pose detector: auto mode falls back to edges.
    }
  }

  if (pose) {
    bs.header.variant = StructureVariant::kPose;
    Bytes payload = extract(LayerId::kStructure,
                            [&] { return encode_pose(*pose, options.zstd_level); });
    bs.layers.push_back({LayerId::kStructure, codec::kPoseZstd, std::move(payload)});
  } else {
    bs.header.variant = StructureVariant::kEdge;
    const EdgeMap edges = extract(LayerId::kStructure, [&] {
      EdgeMap e = extractors.edges(img, options.edge_threshold);
      check_edge_dimensions(e, img.width(), img.height());
      return e;
    });
    const std::uint8_t id = options.external_edges ? codec::kEdgeExternal
                                                   : codec::kEdgeReference;
    Bytes payload = extract(LayerId::kStructure, [&] {
      return encode_edges(edges, id, options.external_edges, options.zstd_level);
    });
    bs.layers.push_back({LayerId::kStructure, id, std::move(payload)});
  }

  bs.layers.push_back(
      {LayerId::kTexture, codec::kStored, encode_texture(extract_texture(img))});
  validate(bs);
  return bs;
}

LayeredPriors decode_layers(const LayeredBitstream& bs, int k,
                            ExternalEdgeCodec* external_edges) {
  if (k < 1 || k > 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "fidelity level must be 1, 2 or 3, got " + std::to_string(k));
  }
  if (bs.depth() < k) {
    throw Error(ErrorCode::kMissingLayer,
                "level " + std::to_string(k) + " requested, container holds " +
                    std::to_string(bs.depth()) + " layer(s)");
  }
  LayeredPriors priors;
  const LayerRecord* sem = bs.find(LayerId::kSemantic);
  priors.semantic = decode_semantic(sem->payload, sem->codec_id);
  if (k >= 2) {
    const LayerRecord* st = bs.find(LayerId::kStructure);
    if (bs.header.variant == StructureVariant::kPose) {
      priors.structure = decode_pose(st->payload);
    } else {
      priors.structure = decode_edges(st->payload, st->codec_id, bs.header.width,
                                      bs.header.height, external_edges);
    }
  }
  if (k >= 3) {
    priors.texture = decode_texture(bs.find(LayerId::kTexture)->payload);
  }
  return priors;
}

LayeredPriors decode_layers(ByteView bytes, int k, ExternalEdgeCodec* external_edges) {
  return decode_layers(parse(bytes), k, external_edges);
}

ConditionSet build_conditions(const LayeredPriors& priors, int w, int h,
                              TextureUpsample mode) {
  priors.validate();
  ConditionSet c;
  c.prompt = priors.semantic.text;
  if (const auto* pose = std::get_if<PoseMap>(&priors.structure)) {
    c.structure_image = render_pose(*pose, w, h);
    c.structure_kind = StructureVariant::kPose;
  } else if (const auto* edges = std::get_if<EdgeMap>(&priors.structure)) {
    c.structure_image = render_edges(*edges, w, h);
    c.structure_kind = StructureVariant::kEdge;
  }
  if (priors.texture) c.texture_image = render_texture(*priors.texture, w, h, mode);
  return c;
}

GeneratedImage reconstruct(const LayeredPriors& priors, int w, int h,
                           const GenerationParams& params,
                           GeneratorProvider& generator, TextureUpsample mode) {
  params.validate();
  GenerationRequest request;
  request.conditions = build_conditions(priors, w, h, mode);
  request.params = params;
  request.width = w;
  request.height = h;
  GeneratedImage out;
  out.image = generator.generate(request);
  if (out.image.width() != w || out.image.height() != h) {
    throw Error(ErrorCode::kDimensionMismatch,
                "generator returned " + std::to_string(out.image.width()) + "x" +
                    std::to_string(out.image.height()) + ", expected " +
                    std::to_string(w) + "x" + std::to_string(h));
  }
  out.fidelity_level = priors.level();
  out.params = params;
  return out;
}

}  // namespace lcmc
