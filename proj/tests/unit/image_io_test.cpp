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

#include "lcmc/error.hpp"
#include "lcmc/image_io.hpp"
#include "oracles.hpp"

using namespace lcmc;

TEST_CASE("PNG and PPM round-trip") {
  std::mt19937_64 rng(1);
  const ImageBuffer img = oracle::random_image(rng, 72, 40);
  CHECK(io::decode_image(io::encode_png(img)) == img);
  CHECK(io::decode_image(io::encode_ppm(img)) == img);
  const Bytes ppm = io::encode_ppm(ImageBuffer(2, 1, Rgb{1, 2, 3}));
  CHECK(ppm == Bytes{'P', '6', '\n', '2', ' ', '1', '\n', '2', '5', '5', '\n', 1, 2, 3, 1, 2, 3});
}

TEST_CASE("PBM round-trip") {
  std::mt19937_64 rng(2);
  const BitGrid g = oracle::random_grid(rng, 13, 7, 0.4);
  const auto path = std::filesystem::temp_directory_path() / "lcmc_io_test.pbm";
  io::write_file(path, io::encode_pbm(g));
  CHECK(io::read_bitmap(path) == g);
  std::filesystem::remove(path);
}

TEST_CASE("garbage is rejected") {
  CHECK_THROWS_AS(io::decode_image(as_bytes("hello world")), Error);
  try {
    io::read_file("/nonexistent/lcmc");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
