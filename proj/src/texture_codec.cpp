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

#include "lcmc/texture_codec.hpp"

#include <cstdint>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc {

TextureMap extract_texture(const ImageBuffer& img) {
  constexpr int g = TextureMap::kGrid;
  if (img.empty() || img.width() % g != 0 || img.height() % g != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "texture extraction needs dimensions divisible by 8, got " +
                    std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  const int bw = img.width() / g;
  const int bh = img.height() / g;
  const auto count = static_cast<std::uint64_t>(bw) * static_cast<std::uint64_t>(bh);

  std::array<std::array<std::uint64_t, 3>, TextureMap::kCells> sums{};
  const auto& px = img.pixels();
  std::size_t i = 0;
  for (int y = 0; y < img.height(); ++y) {
    const int row = y / bh;
    for (int x = 0; x < img.width(); ++x, i += 3) {
      auto& s = sums[row * g + x / bw];
      s[0] += px[i];
      s[1] += px[i + 1];
      s[2] += px[i + 2];
    }
  }

  TextureMap t;
  for (std::size_t c = 0; c < TextureMap::kCells; ++c) {
    t.cells[c] = {static_cast<std::uint8_t>(rounded_mean(sums[c][0], count)),
                  static_cast<std::uint8_t>(rounded_mean(sums[c][1], count)),
                  static_cast<std::uint8_t>(rounded_mean(sums[c][2], count))};
  }
  return t;
}

Bytes encode_texture(const TextureMap& t) {
  Bytes out;
  out.reserve(kTexturePayloadSize);
  put_u8(out, TextureMap::kGrid);
  put_u8(out, TextureMap::kGrid);
  put_u8(out, TextureMap::kBitDepth);
  for (const Rgb& c : t.cells) {
    put_u8(out, c.r);
    put_u8(out, c.g);
    put_u8(out, c.b);
  }
  return out;
}

TextureMap decode_texture(ByteView payload) {
  if (payload.size() < 3) {
    throw Error(ErrorCode::kLengthMismatch,
                "texture payload shorter than its parameter block");
  }
  const int gw = payload[0];
  const int gh = payload[1];
  const int depth = payload[2];
  if (gw != TextureMap::kGrid || gh != TextureMap::kGrid ||
      depth != TextureMap::kBitDepth) {
    throw Error(ErrorCode::kUnsupportedGrid,
                std::to_string(gw) + "x" + std::to_string(gh) + " grid at " +
                    std::to_string(depth) + " bits");
  }
  if (payload.size() != kTexturePayloadSize) {
    throw Error(ErrorCode::kLengthMismatch,
                "texture payload is " + std::to_string(payload.size()) +
                    " bytes, expected " + std::to_string(kTexturePayloadSize));
  }
  TextureMap t;
  for (std::size_t c = 0; c < TextureMap::kCells; ++c) {
    t.cells[c] = {payload[3 + 3 * c], payload[4 + 3 * c], payload[5 + 3 * c]};
  }
  return t;
}

}  // namespace lcmc
