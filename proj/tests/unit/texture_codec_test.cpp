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
#include "lcmc/error.hpp"
#include "lcmc/texture_codec.hpp"
#include "oracles.hpp"

using namespace lcmc;

TEST_CASE("constant image yields a constant map") {
  const TextureMap t = extract_texture(ImageBuffer(512, 512, Rgb{100, 150, 200}));
  for (const Rgb& c : t.cells) REQUIRE(c == Rgb{100, 150, 200});
}

TEST_CASE("half black, half white") {
  const TextureMap t = extract_texture(fixtures::half_black_white());
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      CHECK(t.at(r, c) == (c < 4 ? Rgb{0, 0, 0} : Rgb{255, 255, 255}));
    }
  }
}

TEST_CASE("extract_texture matches the brute-force block mean exactly") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    const int w = 8 * (8 + static_cast<int>(rng() % 64));
    const int h = 8 * (8 + static_cast<int>(rng() % 64));
    const ImageBuffer img = oracle::random_image(rng, w, h);
    REQUIRE(extract_texture(img) == oracle::block_mean(img));
  }
}

TEST_CASE("block mean rounds half up") {
  // 8x8 blocks of a 64x64 image; one block alternates 0/1 so its mean is 0.5.
  ImageBuffer img(64, 64);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) img.set(x, y, (x + y) % 2 ? Rgb{1, 1, 1} : Rgb{0, 0, 0});
  }
  CHECK(extract_texture(img).at(0, 0) == Rgb{1, 1, 1});
}

TEST_CASE("extract_texture requires dimensions divisible by 8") {
  CHECK_THROWS_AS(extract_texture(ImageBuffer(100, 64)), Error);
}

TEST_CASE("payload layout") {
  TextureMap t;
  t.at(0, 0) = {1, 2, 3};
  t.at(0, 1) = {4, 5, 6};
  t.at(7, 7) = {7, 8, 9};
  const Bytes p = encode_texture(t);
  REQUIRE(p.size() == 195);
  CHECK(Bytes(p.begin(), p.begin() + 9) == Bytes{8, 8, 8, 1, 2, 3, 4, 5, 6});
  CHECK(Bytes(p.end() - 3, p.end()) == Bytes{7, 8, 9});
  CHECK(decode_texture(p) == t);
}

TEST_CASE("decode_texture errors") {
  const Bytes good = encode_texture(TextureMap{});
  auto code_of = [](const Bytes& b) {
    try {
      decode_texture(b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  CHECK(code_of(Bytes(good.begin(), good.end() - 1)) == ErrorCode::kLengthMismatch);
  Bytes longer = good;
  longer.push_back(0);
  CHECK(code_of(longer) == ErrorCode::kLengthMismatch);
  Bytes wide = good;
  wide[0] = 9;
  CHECK(code_of(wide) == ErrorCode::kUnsupportedGrid);
  Bytes deep = good;
  deep[2] = 4;
  CHECK(code_of(deep) == ErrorCode::kUnsupportedGrid);
  CHECK(code_of(Bytes{8}) == ErrorCode::kLengthMismatch);
}

TEST_CASE("random maps round-trip") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 500; ++i) {
    const TextureMap t = oracle::random_texture(rng);
    REQUIRE(decode_texture(encode_texture(t)) == t);
  }
}
