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

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "lcmc/condition_render.hpp"
#include "lcmc/error.hpp"
#include "oracles.hpp"

using namespace lcmc;

namespace {

bool is_black(Rgb c) { return c == Rgb{0, 0, 0}; }

}  // namespace

TEST_CASE("stroke width scales with the short side") {
  CHECK(limb_stroke_width(512, 512) == 4);
  CHECK(limb_stroke_width(1024, 768) == 6);
  CHECK(limb_stroke_width(64, 64) == 1);
}

TEST_CASE("empty pose renders black") {
  const ImageBuffer img = render_pose(PoseMap{}, 128, 64);
  CHECK(img.width() == 128);
  for (auto v : img.pixels()) REQUIRE(v == 0);
}

TEST_CASE("single limb stays inside its stroke bounding box") {
  PoseMap p;
  PosePerson person = PosePerson::blank();
  person.keypoints[1] = {true, 25, 50};
  person.keypoints[2] = {true, 75, 50};
  p.persons.push_back(person);
  const ImageBuffer img = render_pose(p, 512, 512);

  CHECK_FALSE(is_black(img.at(256, 256)));
  CHECK(img.at(256, 256) == kSkeletonColors[0]);
  // Endpoints at x = 128 and 384, y = 256; radius 2 for a 4-pixel stroke.
  for (int y = 0; y < 512; ++y) {
    for (int x = 0; x < 512; ++x) {
      if (x >= 126 && x <= 386 && y >= 254 && y <= 258) continue;
      REQUIRE(is_black(img.at(x, y)));
    }
  }
  CHECK_FALSE(is_black(img.at(126, 256)));
  CHECK_FALSE(is_black(img.at(256, 254)));
  CHECK(render_pose(p, 512, 512) == img);
}

TEST_CASE("lone keypoints draw dots and face points are white") {
  PoseMap p;
  PosePerson person = PosePerson::blank();
  person.keypoints[4] = {true, 10, 10};
  person.keypoints[40] = {true, 90, 90};
  p.persons.push_back(person);
  const ImageBuffer img = render_pose(p, 200, 200);
  CHECK(img.at(20, 20) == kSkeletonColors[4]);
  CHECK(img.at(180, 180) == kFaceDotColor);
  CHECK(is_black(img.at(100, 100)));
}

TEST_CASE("edge rendering") {
  EdgeMap e;
  e.grid = BitGrid(256, 256);
  SUBCASE("all zero is black") {
    const ImageBuffer img = render_edges(e, 512, 512);
    for (auto v : img.pixels()) REQUIRE(v == 0);
  }
  SUBCASE("single bit maps to one 2x2 block") {
    e.grid.set(10, 20, true);
    const ImageBuffer img = render_edges(e, 512, 512);
    std::size_t white = 0;
    for (int y = 0; y < 512; ++y) {
      for (int x = 0; x < 512; ++x) {
        const bool in_block = x >= 20 && x <= 21 && y >= 40 && y <= 41;
        REQUIRE(img.at(x, y) == (in_block ? Rgb{255, 255, 255} : Rgb{0, 0, 0}));
        white += in_block;
      }
    }
    CHECK(white == 4);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(render_edges(e, 500, 512), Error);
  }
}

TEST_CASE("render then re-binarize and max-pool restores the grid") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const int w = 16 + static_cast<int>(rng() % 200);
    const int h = 16 + static_cast<int>(rng() % 200);
    EdgeMap e;
    e.grid = oracle::random_grid(rng, w, h, static_cast<double>(rng() % 100) / 100.0);
    REQUIRE(oracle::binarize_maxpool(render_edges(e, 2 * w, 2 * h), 2) == e.grid);
  }
}

TEST_CASE("texture rendering") {
  SUBCASE("uniform map, both modes") {
    TextureMap t;
    t.cells.fill(Rgb{12, 200, 99});
    for (auto mode : {TextureUpsample::kBilinear, TextureUpsample::kNearest}) {
      const ImageBuffer img = render_texture(t, 256, 128, mode);
      for (int y = 0; y < 128; ++y) {
        for (int x = 0; x < 256; ++x) REQUIRE(img.at(x, y) == Rgb{12, 200, 99});
      }
    }
  }
  SUBCASE("nearest mode reproduces the cell at each block center") {
    std::mt19937_64 rng(2);
    const TextureMap t = oracle::random_texture(rng);
    const ImageBuffer img = render_texture(t, 512, 256, TextureUpsample::kNearest);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) REQUIRE(img.at(c * 64 + 32, r * 32 + 16) == t.at(r, c));
    }
    CHECK(extract_texture(img) == t);
  }
  SUBCASE("bilinear midpoint between 0 and 255 rounds to 128") {
    TextureMap t;
    for (int r = 0; r < 8; ++r) {
      t.at(r, 0) = {0, 0, 0};
      for (int c = 1; c < 8; ++c) t.at(r, c) = {255, 255, 255};
    }
    const ImageBuffer img = render_texture(t, 512, 512, TextureUpsample::kBilinear);
    // Centers of columns 0 and 1 are pixels 32 and 96.
    CHECK(img.at(32, 100) == Rgb{0, 0, 0});
    CHECK(img.at(96, 100) == Rgb{255, 255, 255});
    CHECK(img.at(64, 100) == Rgb{128, 128, 128});
    CHECK(img.at(0, 100) == Rgb{0, 0, 0});  // edge-clamped
    CHECK(img.at(48, 100).r == 64);          // quarter way: 63.75
  }
  SUBCASE("bilinear reproduces cell values at centers") {
    std::mt19937_64 rng(9);
    const TextureMap t = oracle::random_texture(rng);
    const ImageBuffer img = render_texture(t, 512, 512);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) REQUIRE(img.at(c * 64 + 32, r * 64 + 32) == t.at(r, c));
    }
    CHECK(render_texture(t, 512, 512) == img);
  }
  SUBCASE("dimensions must be divisible by 8") {
    CHECK_THROWS_AS(render_texture(TextureMap{}, 100, 64), Error);
  }
}
