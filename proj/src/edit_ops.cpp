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

#include "lcmc/edit_ops.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc::edit {
namespace {

const LayerRecord& require_layer(const LayeredBitstream& bs, LayerId id) {
  const LayerRecord* r = bs.find(id);
  if (r == nullptr) {
    throw Error(ErrorCode::kMissingLayer,
                std::string(to_string(id)) + " layer is absent");
  }
  return *r;
}

void require_variant(const LayeredBitstream& bs, StructureVariant v) {
  if (bs.header.variant != v) {
    throw Error(ErrorCode::kWrongVariant,
                "edit needs a " + std::string(to_string(v)) +
                    " container, got " +
                    std::string(to_string(bs.header.variant)));
  }
}

EdgeMap decode_edge_layer(const LayeredBitstream& bs) {
  const LayerRecord& r = require_layer(bs, LayerId::kStructure);
  return decode_edges(r.payload, r.codec_id, bs.header.width, bs.header.height);
}

// Edited edge grids are always written with the reference codec.
LayeredBitstream with_edges(const LayeredBitstream& bs, const EdgeMap& e) {
  LayeredBitstream out = bs;
  LayerRecord* r = out.find(LayerId::kStructure);
  r->codec_id = codec::kEdgeReference;
  r->payload = encode_edges(e, codec::kEdgeReference);
  return out;
}

LayeredBitstream with_texture(const LayeredBitstream& bs, const TextureMap& t) {
  LayeredBitstream out = bs;
  out.find(LayerId::kTexture)->payload = encode_texture(t);
  return out;
}

// Positive-area overlap between [a0, a1) and [b0, b1].
bool overlaps(double a0, double a1, double b0, double b1) {
  return a0 < b1 && a1 > b0;
}

}  // namespace

void validate_region(const RegionRect& r) {
  const bool in_unit = r.x0 >= 0.0 && r.y0 >= 0.0 && r.x1 <= 1.0 && r.y1 <= 1.0;
  if (!in_unit || !(r.x0 < r.x1) || !(r.y0 < r.y1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "region must lie in the unit square with positive area");
  }
}

LayeredBitstream pose_translate(const LayeredBitstream& bs, std::size_t person,
                                const std::vector<std::size_t>& keypoints,
                                double dx, double dy) {
  require_variant(bs, StructureVariant::kPose);
  const LayerRecord& r = require_layer(bs, LayerId::kStructure);
  PoseMap pose = decode_pose(r.payload);
  if (person >= pose.persons.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "person " + std::to_string(person) + " of " +
                    std::to_string(pose.persons.size()));
  }
  auto& kps = pose.persons[person].keypoints;
  for (std::size_t k : keypoints) {
    if (k >= kps.size()) {
      throw Error(ErrorCode::kOutOfRange,
                  "keypoint " + std::to_string(k) + " of " +
                      std::to_string(kps.size()));
    }
    if (!kps[k].present) {
      throw Error(ErrorCode::kInvalidArgument,
                  "keypoint " + std::to_string(k) + " is not present");
    }
    kps[k].qx = quantize_coord(std::clamp(dequantize_coord(kps[k].qx) + dx, 0.0, 1.0));
    kps[k].qy = quantize_coord(std::clamp(dequantize_coord(kps[k].qy) + dy, 0.0, 1.0));
  }
  LayeredBitstream out = bs;
  out.find(LayerId::kStructure)->payload = encode_pose(pose);
  return out;
}

LayeredBitstream edge_stencil(const LayeredBitstream& bs, const BitGrid& stencil,
                              StencilMode mode) {
  require_variant(bs, StructureVariant::kEdge);
  EdgeMap e = decode_edge_layer(bs);
  if (stencil.width() != e.width() || stencil.height() != e.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "stencil is " + std::to_string(stencil.width()) + "x" +
                    std::to_string(stencil.height()) + ", grid is " +
                    std::to_string(e.width()) + "x" + std::to_string(e.height()));
  }
  for (int y = 0; y < e.height(); ++y) {
    for (int x = 0; x < e.width(); ++x) {
      if (!stencil.get(x, y)) continue;
      e.grid.set(x, y, mode == StencilMode::kAdd);
    }
  }
  return with_edges(bs, e);
}

LayeredBitstream texture_patch(const LayeredBitstream& bs,
                               const std::vector<CellPatch>& cells) {
  TextureMap t = decode_texture(require_layer(bs, LayerId::kTexture).payload);
  for (const auto& c : cells) {
    if (c.row < 0 || c.row >= TextureMap::kGrid || c.col < 0 ||
        c.col >= TextureMap::kGrid) {
      throw Error(ErrorCode::kOutOfRange,
                  "cell (" + std::to_string(c.row) + ", " +
                      std::to_string(c.col) + ") outside the 8x8 grid");
    }
    t.at(c.row, c.col) = c.color;
  }
  return with_texture(bs, t);
}

LayeredBitstream texture_swap(const LayeredBitstream& bs, ByteView donor_payload) {
  const LayerRecord& own = require_layer(bs, LayerId::kTexture);
  decode_texture(own.payload);
  decode_texture(donor_payload);
  LayeredBitstream out = bs;
  LayerRecord* r = out.find(LayerId::kTexture);
  r->codec_id = codec::kStored;
  r->payload.assign(donor_payload.begin(), donor_payload.end());
  return out;
}

LayeredBitstream texture_swap(const LayeredBitstream& bs,
                              const LayeredBitstream& donor) {
  return texture_swap(bs, require_layer(donor, LayerId::kTexture).payload);
}

LayeredBitstream erase_object(const LayeredBitstream& bs, const RegionRect& region) {
  validate_region(region);
  const LayerRecord& structure = require_layer(bs, LayerId::kStructure);
  const LayerRecord& texture = require_layer(bs, LayerId::kTexture);
  const double W = bs.header.width;
  const double H = bs.header.height;

  LayeredBitstream out = bs;
  if (bs.header.variant == StructureVariant::kEdge) {
    EdgeMap e = decode_edge_layer(bs);
    const double s = e.downscale;
    for (int y = 0; y < e.height(); ++y) {
      if (!overlaps(y * s / H, (y + 1) * s / H, region.y0, region.y1)) continue;
      for (int x = 0; x < e.width(); ++x) {
        if (overlaps(x * s / W, (x + 1) * s / W, region.x0, region.x1)) {
          e.grid.set(x, y, false);
        }
      }
    }
    out = with_edges(out, e);
  } else {
    PoseMap pose = decode_pose(structure.payload);
    PoseMap kept;
    for (auto& person : pose.persons) {
      for (auto& kp : person.keypoints) {
        if (!kp.present) continue;
        const double x = dequantize_coord(kp.qx);
        const double y = dequantize_coord(kp.qy);
        if (x >= region.x0 && x <= region.x1 && y >= region.y0 && y <= region.y1) {
          kp = PoseKeypoint{};
        }
      }
      if (person.present_count() > 0) kept.persons.push_back(std::move(person));
    }
    if (kept.persons.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "erase would remove every person from the pose layer");
    }
    if (!(kept == pose)) {
      out.find(LayerId::kStructure)->payload = encode_pose(kept);
    }
  }

  TextureMap t = decode_texture(texture.payload);
  constexpr int g = TextureMap::kGrid;
  std::array<bool, TextureMap::kCells> hit{};
  std::array<std::uint64_t, 3> sum{};
  std::uint64_t survivors = 0;
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) {
      hit[r * g + c] = overlaps(double(c) / g, double(c + 1) / g, region.x0, region.x1) &&
                       overlaps(double(r) / g, double(r + 1) / g, region.y0, region.y1);
      if (hit[r * g + c]) continue;
      const Rgb& px = t.at(r, c);
      sum[0] += px.r;
      sum[1] += px.g;
      sum[2] += px.b;
      ++survivors;
    }
  }
  const Rgb fill =
      survivors == 0
          ? kEraseFallback
          : Rgb{static_cast<std::uint8_t>(rounded_mean(sum[0], survivors)),
                static_cast<std::uint8_t>(rounded_mean(sum[1], survivors)),
                static_cast<std::uint8_t>(rounded_mean(sum[2], survivors))};
  for (std::size_t i = 0; i < TextureMap::kCells; ++i) {
    if (hit[i]) t.cells[i] = fill;
  }
  return with_texture(out, t);
}

}  // namespace lcmc::edit
