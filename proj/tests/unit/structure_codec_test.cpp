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

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lcmc/container.hpp"
#include "lcmc/error.hpp"
#include "lcmc/structure_codec.hpp"
#include "lcmc/zstd_frame.hpp"
#include "oracles.hpp"

using namespace lcmc;

namespace {

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

// Black strokes on white until the detector reports at least `density`.
EdgeMap line_drawing_edges(unsigned seed, double density) {
  ImageBuffer img(512, 512, Rgb{255, 255, 255});
  std::mt19937 rng(seed);
  EdgeMap e;
  do {
    for (int s = 0; s < 5; ++s) {
      const double x0 = rng() % 512, y0 = rng() % 512, x1 = rng() % 512, y1 = rng() % 512;
      for (int t = 0; t <= 1000; ++t) {
        img.set(static_cast<int>(x0 + (x1 - x0) * t / 1000.0),
                static_cast<int>(y0 + (y1 - y0) * t / 1000.0), {0, 0, 0});
      }
    }
    e = detect_edges_fallback(img, 50);
  } while (static_cast<double>(e.grid.count()) < density * 65536);
  return e;
}

}  // namespace

TEST_CASE("coordinate quantization") {
  CHECK(quantize_coord(0.12345) == 12);
  CHECK(quantize_coord(0.0) == 0);
  CHECK(quantize_coord(1.0) == 100);
  CHECK(quantize_coord(0.125) == 13);
  CHECK(quantize_coord(0.994) == 99);
  CHECK(quantize_coord(0.995) == 100);
  CHECK(dequantize_coord(37) == doctest::Approx(0.37));
  CHECK(error_of([] { quantize_coord(-0.001); }) == ErrorCode::kInvalidArgument);
  CHECK(error_of([] { quantize_coord(1.0001); }) == ErrorCode::kInvalidArgument);
  CHECK(error_of([] { quantize_coord(std::nan("")); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("quantization error is bounded by half a step") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double x = u(rng);
    worst = std::max(worst, std::abs(x - dequantize_coord(quantize_coord(x))));
  }
  CHECK(worst <= 0.005 + 1e-12);
  for (int q = 0; q <= 100; ++q) {
    REQUIRE(quantize_coord(dequantize_coord(static_cast<std::uint8_t>(q))) == q);
  }
}

TEST_CASE("single body-only person round-trips") {
  PoseMap p;
  PosePerson person = PosePerson::blank();
  for (std::size_t k = 0; k < kBodyKeypoints; ++k) {
    person.keypoints[k] = {true, static_cast<std::uint8_t>(10 + k), static_cast<std::uint8_t>(90 - k)};
  }
  p.persons.push_back(person);
  CHECK(decode_pose(encode_pose(p)) == p);
  // count + schema + 11-byte bitmap + 18 coordinate pairs
  CHECK(pose_raw_bytes(p).size() == 1 + 1 + 11 + 36);
}

TEST_CASE("full-schema person raw layout") {
  const PoseMap p = fixtures::reference_pose();
  REQUIRE(p.persons.size() == 1);
  REQUIRE(p.persons[0].present_count() == 88);
  CHECK(pose_raw_bytes(p).size() == 1 + 1 + 11 + 176);
  CHECK(decode_pose(encode_pose(p)) == p);
}

TEST_CASE("random pose maps round-trip") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const PoseMap p = oracle::random_pose(rng, 4);
    REQUIRE(decode_pose(encode_pose(p)) == p);
  }
}

TEST_CASE("pose validation and length errors") {
  PoseMap two = fixtures::reference_pose();
  two.persons.push_back(two.persons[0]);
  Bytes raw = pose_raw_bytes(two);
  const std::size_t one_person = (raw.size() - 1) / 2;
  raw.resize(1 + one_person);  // count still says 2
  CHECK(error_of([&] { pose_from_raw_bytes(raw); }) == ErrorCode::kLengthMismatch);
  CHECK(error_of([&] { decode_pose(zstd::compress(raw)); }) == ErrorCode::kLengthMismatch);

  Bytes trailing = pose_raw_bytes(fixtures::reference_pose());
  trailing.push_back(0);
  CHECK(error_of([&] { pose_from_raw_bytes(trailing); }) == ErrorCode::kLengthMismatch);

  PoseMap empty_person;
  empty_person.persons.push_back(PosePerson::blank());
  CHECK(error_of([&] { encode_pose(empty_person); }) == ErrorCode::kInvariantViolation);
  // Same condition arriving from the wire.
  Bytes zero_kp = {1, 0};
  zero_kp.resize(13, 0);
  CHECK(error_of([&] { pose_from_raw_bytes(zero_kp); }) == ErrorCode::kInvariantViolation);

  PoseMap crowd;
  for (int i = 0; i < 17; ++i) crowd.persons.push_back(fixtures::reference_pose().persons[0]);
  CHECK(error_of([&] { encode_pose(crowd); }) == ErrorCode::kInvalidArgument);
  crowd.persons.pop_back();
  CHECK(decode_pose(encode_pose(crowd)) == crowd);

  CHECK(error_of([] { encode_pose(PoseMap{}); }) == ErrorCode::kInvariantViolation);

  PoseMap off_grid = fixtures::reference_pose();
  off_grid.persons[0].keypoints[0].qx = 101;
  CHECK(error_of([&] { encode_pose(off_grid); }) == ErrorCode::kInvariantViolation);

  PoseMap short_person = fixtures::reference_pose();
  short_person.persons[0].keypoints.pop_back();
  CHECK(error_of([&] { encode_pose(short_person); }) == ErrorCode::kInvariantViolation);

  CHECK(error_of([] { decode_pose(Bytes{9, 9, 9}); }) == ErrorCode::kDecode);
}

TEST_CASE("bit grid packing") {
  BitGrid g(10, 2);
  g.set(0, 0, true);
  g.set(9, 0, true);
  g.set(1, 1, true);
  CHECK(g.pack_rows() == Bytes{0x80, 0x40, 0x40, 0x00});
  CHECK(BitGrid::unpack_rows(10, 2, g.pack_rows()) == g);
  CHECK(error_of([] { BitGrid::unpack_rows(10, 2, Bytes{0, 0x01, 0, 0}); }) == ErrorCode::kDecode);
  CHECK(error_of([] { BitGrid::unpack_rows(10, 2, Bytes{0, 0, 0}); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("all-zero 256x256 grid compresses to at most 64 bytes") {
  EdgeMap e;
  e.grid = BitGrid(256, 256);
  const Bytes payload = encode_edges(e, codec::kEdgeReference);
  // zstd 1.5.7, level 19: 22 bytes.
  CHECK(payload.size() <= 64);
  CHECK(Bytes(payload.begin(), payload.begin() + 4) == Bytes{2, 50, 0, 0});
  CHECK(decode_edges(payload, codec::kEdgeReference, 512, 512) == e);
}

TEST_CASE("3% line-drawing edge map fits in 1600 bytes") {
  const EdgeMap e = line_drawing_edges(1, 0.03);
  const double density = static_cast<double>(e.grid.count()) / 65536.0;
  CHECK(density >= 0.03);
  CHECK(density < 0.04);
  const Bytes payload = encode_edges(e, codec::kEdgeReference);
  // Measured 692 bytes with zstd 1.5.7 at level 19.
  CHECK(payload.size() <= 1600);
  CHECK(decode_edges(payload, codec::kEdgeReference, 512, 512) == e);
}

TEST_CASE("random grids round-trip through the reference codec") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const int w = 32 + static_cast<int>(rng() % 300);
    const int h = 32 + static_cast<int>(rng() % 300);
    EdgeMap e;
    e.grid = oracle::random_grid(rng, w, h, static_cast<double>(rng() % 100) / 100.0);
    REQUIRE(decode_edges(encode_edges(e, codec::kEdgeReference), codec::kEdgeReference,
                         w * 2, h * 2) == e);
  }
}

TEST_CASE("decode_edges rejects malformed payloads") {
  EdgeMap e;
  e.grid = BitGrid(32, 32);
  Bytes payload = encode_edges(e, codec::kEdgeReference);
  CHECK(error_of([] { decode_edges(Bytes{2, 50, 0}, codec::kEdgeReference, 64, 64); }) ==
        ErrorCode::kLengthMismatch);
  // Grid bytes for 64x64 do not match a 128x128 header.
  CHECK(error_of([&] { decode_edges(payload, codec::kEdgeReference, 128, 128); }) ==
        ErrorCode::kLengthMismatch);
  CHECK(error_of([&] { decode_edges(payload, codec::kEdgeReference, 63, 64); }) ==
        ErrorCode::kDimensionMismatch);
  Bytes reserved = payload;
  reserved[3] = 1;
  CHECK(error_of([&] { decode_edges(reserved, codec::kEdgeReference, 64, 64); }) ==
        ErrorCode::kDecode);
  CHECK(error_of([&] { decode_edges(payload, 7, 64, 64); }) == ErrorCode::kUnregisteredCodec);
  CHECK(error_of([&] { decode_edges(payload, codec::kEdgeExternal, 64, 64); }) ==
        ErrorCode::kExternalUnavailable);
  CHECK(error_of([&] { encode_edges(e, codec::kEdgeExternal); }) ==
        ErrorCode::kExternalUnavailable);
}

TEST_CASE("external edge codec payload is stored verbatim") {
  std::mt19937_64 rng(8);
  EdgeMap e;
  e.grid = oracle::random_grid(rng, 40, 24, 0.2);
  CommandEdgeCodec identity("cp {in} {out}", "cp {in} {out}");
  const Bytes payload = encode_edges(e, codec::kEdgeExternal, &identity);
  CHECK(payload.size() == 4 + 40 * 24);
  CHECK(decode_edges(payload, codec::kEdgeExternal, 80, 48, &identity) == e);

  CommandEdgeCodec broken("false", "false");
  CHECK(error_of([&] { encode_edges(e, codec::kEdgeExternal, &broken); }) ==
        ErrorCode::kExternalUnavailable);
}

TEST_CASE("fallback detector") {
  SUBCASE("constant image has no edges") {
    const EdgeMap e = detect_edges_fallback(ImageBuffer(128, 96, Rgb{90, 20, 200}));
    CHECK(e.width() == 64);
    CHECK(e.height() == 48);
    CHECK(e.grid.count() == 0);
  }
  SUBCASE("vertical step stays within one grid column of c/2") {
    for (int c : {64, 100, 130}) {
      ImageBuffer img(256, 128, Rgb{0, 0, 0});
      for (int y = 0; y < 128; ++y) {
        for (int x = c; x < 256; ++x) img.set(x, y, {255, 255, 255});
      }
      const EdgeMap e = detect_edges_fallback(img);
      CHECK(e.grid.count() > 0);
      for (int y = 0; y < e.height(); ++y) {
        for (int x = 0; x < e.width(); ++x) {
          if (e.grid.get(x, y)) REQUIRE(std::abs(x - c / 2) <= 1);
        }
        REQUIRE((e.grid.get(c / 2 - 1, y) || e.grid.get(c / 2, y)));
      }
    }
  }
  SUBCASE("deterministic") {
    const ImageBuffer img = fixtures::corpus_image(3);
    CHECK(detect_edges_fallback(img) == detect_edges_fallback(img));
  }
  SUBCASE("threshold is recorded and monotone") {
    const ImageBuffer img = fixtures::corpus_image(1);
    const EdgeMap lo = detect_edges_fallback(img, 20);
    const EdgeMap hi = detect_edges_fallback(img, 120);
    CHECK(lo.threshold == 20);
    CHECK(lo.grid.count() >= hi.grid.count());
  }
  SUBCASE("odd dimensions are rejected") {
    CHECK(error_of([] { detect_edges_fallback(ImageBuffer(65, 64)); }) ==
          ErrorCode::kInvalidArgument);
  }
}
