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

#ifndef LCMC_TESTS_ORACLES_HPP_
#define LCMC_TESTS_ORACLES_HPP_

// Independent reference computations and random generators for tests.
// Nothing here calls the code paths it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "lcmc/container.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"
#include "lcmc/texture_codec.hpp"

namespace lcmc::oracle {

inline Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

/// Per-block mean by direct summation in floating point, block by block.
inline TextureMap block_mean(const ImageBuffer& img) {
  TextureMap t;
  const int bw = img.width() / 8;
  const int bh = img.height() / 8;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      double s[3] = {0, 0, 0};
      for (int y = r * bh; y < (r + 1) * bh; ++y) {
        for (int x = c * bw; x < (c + 1) * bw; ++x) {
          const std::uint8_t* p = &img.pixels()[(static_cast<std::size_t>(y) * img.width() + x) * 3];
          s[0] += p[0];
          s[1] += p[1];
          s[2] += p[2];
        }
      }
      const double n = static_cast<double>(bw) * bh;
      t.cells[r * 8 + c] = {static_cast<std::uint8_t>(std::round(s[0] / n)),
                            static_cast<std::uint8_t>(std::round(s[1] / n)),
                            static_cast<std::uint8_t>(std::round(s[2] / n))};
    }
  }
  return t;
}

/// Re-binarize (any non-black pixel) then max-pool by `factor`.
inline BitGrid binarize_maxpool(const ImageBuffer& img, int factor) {
  BitGrid g(img.width() / factor, img.height() / factor);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb c = img.at(x, y);
      if (c.r || c.g || c.b) g.set(x / factor, y / factor, true);
    }
  }
  return g;
}

inline BitGrid random_grid(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution bit(density);
  BitGrid g(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) g.set(x, y, bit(rng));
  }
  return g;
}

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng());
  return b;
}

inline ImageBuffer random_image(std::mt19937_64& rng, int w, int h) {
  return ImageBuffer(w, h, random_bytes(rng, static_cast<std::size_t>(w) * h * 3));
}

inline TextureMap random_texture(std::mt19937_64& rng) {
  TextureMap t;
  for (auto& c : t.cells) {
    c = {static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
         static_cast<std::uint8_t>(rng())};
  }
  return t;
}

inline PoseMap random_pose(std::mt19937_64& rng, int max_persons = 3) {
  PoseMap p;
  const int persons = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_persons));
  for (int i = 0; i < persons; ++i) {
    PosePerson person = PosePerson::blank();
    const double density = 0.05 + 0.95 * static_cast<double>(rng() % 1000) / 1000.0;
    std::bernoulli_distribution present(density);
    for (auto& kp : person.keypoints) {
      if (!present(rng)) continue;
      kp = {true, static_cast<std::uint8_t>(rng() % 101), static_cast<std::uint8_t>(rng() % 101)};
    }
    if (person.present_count() == 0) person.keypoints[rng() % person.keypoints.size()].present = true;
    p.persons.push_back(std::move(person));
  }
  return p;
}

/// Random container satisfying every invariant; payload bytes are opaque.
inline LayeredBitstream random_bitstream(std::mt19937_64& rng) {
  LayeredBitstream bs;
  bs.header.width = static_cast<std::uint16_t>(64 + rng() % 4000);
  bs.header.height = static_cast<std::uint16_t>(64 + rng() % 4000);
  const int depth = static_cast<int>(rng() % 4);
  if (depth >= 2) {
    bs.header.variant = rng() % 2 ? StructureVariant::kEdge : StructureVariant::kPose;
  } else {
    bs.header.variant = static_cast<StructureVariant>(rng() % 3);
  }
  for (int id = 1; id <= depth; ++id) {
    LayerRecord r;
    r.layer = static_cast<LayerId>(id);
    if (id == 1) r.codec_id = static_cast<std::uint8_t>(rng() % 2);
    if (id == 2) {
      r.codec_id = bs.header.variant == StructureVariant::kPose
                       ? 1
                       : static_cast<std::uint8_t>(1 + rng() % 2);
    }
    r.payload = random_bytes(rng, rng() % 400);
    bs.layers.push_back(std::move(r));
  }
  return bs;
}

inline std::string random_printable(std::mt19937_64& rng, std::size_t max_len) {
  std::string s(rng() % (max_len + 1), ' ');
  for (auto& c : s) c = static_cast<char>(32 + rng() % 95);
  return s;
}

}  // namespace lcmc::oracle

#endif  // LCMC_TESTS_ORACLES_HPP_
