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

#ifndef LCMC_EDIT_OPS_HPP_
#define LCMC_EDIT_OPS_HPP_

#include <cstddef>
#include <vector>

#include "lcmc/container.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"
#include "lcmc/texture_codec.hpp"

// Bitstream-level edits. Each edit decodes only the layer it targets,
// modifies it, re-encodes it canonically, and copies every other record
// unchanged. Nothing here renders conditions or talks to a generator.
namespace lcmc::edit {

/// Axis-aligned rectangle in normalized image coordinates.
struct RegionRect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;
};

void validate_region(const RegionRect& r);

inline constexpr Rgb kEraseFallback = {128, 128, 128};

struct CellPatch {
  int row = 0;
  int col = 0;
  Rgb color;
};

enum class StencilMode { kAdd, kSubtract };

/// Shifts the chosen keypoints of one person by (dx, dy) in normalized
/// units, clamping to [0, 1] and re-quantizing.
LayeredBitstream pose_translate(const LayeredBitstream& bs, std::size_t person,
                                const std::vector<std::size_t>& keypoints,
                                double dx, double dy);

/// grid | stencil (add) or grid & ~stencil (subtract).
LayeredBitstream edge_stencil(const LayeredBitstream& bs, const BitGrid& stencil,
                              StencilMode mode);

LayeredBitstream texture_patch(const LayeredBitstream& bs,
                               const std::vector<CellPatch>& cells);

/// Replaces the texture record of `bs` with `donor_payload` byte for byte.
/// The payload must decode as a texture map.
LayeredBitstream texture_swap(const LayeredBitstream& bs, ByteView donor_payload);
LayeredBitstream texture_swap(const LayeredBitstream& bs,
                              const LayeredBitstream& donor);

/// Clears the structure inside `region` and fills the texture cells it
/// touches with the mean color of the untouched cells.
LayeredBitstream erase_object(const LayeredBitstream& bs, const RegionRect& region);

}  // namespace lcmc::edit

#endif  // LCMC_EDIT_OPS_HPP_
