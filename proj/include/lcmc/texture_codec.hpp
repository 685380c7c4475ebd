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

#ifndef LCMC_TEXTURE_CODEC_HPP_
#define LCMC_TEXTURE_CODEC_HPP_

#include <array>
#include <cstddef>

#include "lcmc/bytes.hpp"
#include "lcmc/image.hpp"

namespace lcmc {

/// 8x8 palette of block colors, 8 bits per channel, row-major
/// (cell (row, col) at index row * 8 + col).
struct TextureMap {
  static constexpr int kGrid = 8;
  static constexpr int kBitDepth = 8;
  static constexpr std::size_t kCells = kGrid * kGrid;

  std::array<Rgb, kCells> cells{};

  Rgb& at(int row, int col) { return cells[row * kGrid + col]; }
  const Rgb& at(int row, int col) const { return cells[row * kGrid + col]; }

  bool operator==(const TextureMap&) const = default;
};

/// grid_w, grid_h, bit_depth, then 192 raw RGB bytes.
inline constexpr std::size_t kTexturePayloadSize = 3 + 3 * TextureMap::kCells;

/// Per-block channel means, rounded half away from zero. Width and height
/// must be divisible by 8.
TextureMap extract_texture(const ImageBuffer& img);

Bytes encode_texture(const TextureMap& t);
TextureMap decode_texture(ByteView payload);

}  // namespace lcmc

#endif  // LCMC_TEXTURE_CODEC_HPP_
