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

#include "lcmc/container.hpp"
#include "lcmc/error.hpp"
#include "oracles.hpp"

using namespace lcmc;

namespace {

LayeredBitstream three_layer() {
  LayeredBitstream bs;
  bs.header.width = 512;
  bs.header.height = 512;
  bs.header.variant = StructureVariant::kEdge;
  bs.layers.push_back({LayerId::kSemantic, codec::kZstd, Bytes(30, 0xAB)});
  bs.layers.push_back({LayerId::kStructure, codec::kEdgeReference, Bytes(100, 0x11)});
  bs.layers.push_back({LayerId::kTexture, codec::kStored, Bytes(195, 0x22)});
  return bs;
}

ErrorCode parse_error(const Bytes& b) {
  try {
    parse(b);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse accepted malformed input");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("header-only container is exactly ten bytes") {
  LayeredBitstream bs;
  bs.header.width = 512;
  bs.header.height = 512;
  const Bytes b = serialize(bs);
  CHECK(b.size() == 10);
  CHECK(b == Bytes{'L', 'C', 'M', 'C', 1, 0x02, 0x00, 0x02, 0x00, 0});
  CHECK(parse(b) == bs);
}

TEST_CASE("records use big-endian TLV framing") {
  LayeredBitstream bs;
  bs.header = {1, 0x0140, 0x00F0, StructureVariant::kNone};
  bs.layers.push_back({LayerId::kSemantic, codec::kStored, Bytes{'h', 'i'}});
  const Bytes b = serialize(bs);
  CHECK(b == Bytes{'L', 'C', 'M', 'C', 1, 0x01, 0x40, 0x00, 0xF0, 0,
                   1, 0, 0, 0, 0, 2, 'h', 'i'});
}

TEST_CASE("serialize is deterministic and round-trips") {
  const LayeredBitstream bs = three_layer();
  const Bytes a = serialize(bs);
  CHECK(a == serialize(bs));
  CHECK(parse(a) == bs);
  CHECK(a.size() == 10 + (6 + 30) + (6 + 100) + (6 + 195));
}

TEST_CASE("randomized round-trip and framing accounting") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const LayeredBitstream bs = oracle::random_bitstream(rng);
    const Bytes b = serialize(bs);
    std::size_t expected = 10;
    for (const auto& r : bs.layers) expected += 6 + r.payload.size();
    REQUIRE(b.size() == expected);
    REQUIRE(parse(b) == bs);
  }
}

TEST_CASE("parse rejects malformed input with distinct errors") {
  const Bytes good = serialize(three_layer());

  Bytes bad_magic = good;
  std::copy_n("XXXX", 4, bad_magic.begin());
  CHECK(parse_error(bad_magic) == ErrorCode::kBadMagic);

  Bytes bad_version = good;
  bad_version[4] = 2;
  CHECK(parse_error(bad_version) == ErrorCode::kUnsupportedVersion);

  Bytes short_last = good;
  short_last.pop_back();
  CHECK(parse_error(short_last) == ErrorCode::kTruncated);

  CHECK(parse_error(Bytes(good.begin(), good.begin() + 7)) == ErrorCode::kTruncated);
  CHECK(parse_error(Bytes(good.begin(), good.begin() + 13)) == ErrorCode::kTruncated);

  // Semantic record repeated.
  Bytes dup(good.begin(), good.begin() + 10 + 36);
  dup.insert(dup.end(), good.begin() + 10, good.begin() + 10 + 36);
  CHECK(parse_error(dup) == ErrorCode::kDuplicateLayer);

  // Texture directly after semantic.
  Bytes gap(good.begin(), good.begin() + 10 + 36);
  const Bytes tex_record(good.end() - 201, good.end());
  gap.insert(gap.end(), tex_record.begin(), tex_record.end());
  CHECK(parse_error(gap) == ErrorCode::kLadderViolation);

  // Structure before semantic.
  Bytes reordered(good.begin(), good.begin() + 10);
  reordered.insert(reordered.end(), good.begin() + 10 + 36, good.begin() + 10 + 36 + 106);
  CHECK(parse_error(reordered) == ErrorCode::kLadderViolation);

  Bytes backwards = good;
  backwards.insert(backwards.end(), good.begin() + 10, good.begin() + 10 + 36);
  CHECK(parse_error(backwards) == ErrorCode::kLayerOrder);

  Bytes unknown = good;
  unknown.insert(unknown.end(), {4, 0, 0, 0, 0, 0});
  CHECK(parse_error(unknown) == ErrorCode::kUnknownLayer);

  Bytes tiny = good;
  tiny[6] = 10;  // width 0x000A
  tiny[5] = 0;
  CHECK(parse_error(tiny) == ErrorCode::kInvalidHeader);

  Bytes no_variant = good;
  no_variant[9] = 0;
  CHECK(parse_error(no_variant) == ErrorCode::kVariantMismatch);

  Bytes bad_codec = good;
  bad_codec[11] = 7;
  CHECK(parse_error(bad_codec) == ErrorCode::kUnregisteredCodec);

  CHECK(parse_error(Bytes{}) == ErrorCode::kTruncated);
}

TEST_CASE("serialize validates invariants") {
  LayeredBitstream bs = three_layer();
  bs.layers.erase(bs.layers.begin());
  CHECK_THROWS_AS(serialize(bs), Error);

  LayeredBitstream none = three_layer();
  none.header.variant = StructureVariant::kNone;
  try {
    serialize(none);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVariantMismatch);
  }

  LayeredBitstream pose_with_edge_codec = three_layer();
  pose_with_edge_codec.header.variant = StructureVariant::kPose;
  pose_with_edge_codec.layers[1].codec_id = codec::kEdgeExternal;
  CHECK_THROWS_AS(serialize(pose_with_edge_codec), Error);
}

TEST_CASE("truncate_to_layer keeps exactly the leading layers") {
  const LayeredBitstream bs = three_layer();
  const Bytes full = serialize(bs);

  const Bytes k1 = truncate_to_layer(full, 1);
  const LayeredBitstream p1 = parse(k1);
  REQUIRE(p1.layers.size() == 1);
  CHECK(p1.layers[0].layer == LayerId::kSemantic);
  CHECK(p1.header == bs.header);

  // 10 + (6 + 30) + (6 + 100)
  CHECK(truncate_to_layer(full, 2).size() == 152);
  CHECK(truncate_to_layer(full, 3) == full);
  CHECK(truncate_to_layer(full, 9) == full);
  CHECK(truncate_to_layer(truncate_to_layer(full, 2), 2) == truncate_to_layer(full, 2));
  CHECK_THROWS_AS(truncate_to_layer(full, 0), Error);
}

TEST_CASE("prefix property holds for random containers") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const LayeredBitstream bs = oracle::random_bitstream(rng);
    const Bytes b = serialize(bs);
    double previous = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const Bytes t = truncate_to_layer(b, k);
      const LayeredBitstream p = parse(t);
      REQUIRE(p.layers.size() == static_cast<std::size_t>(std::min(k, bs.depth())));
      for (const auto& r : p.layers) REQUIRE(static_cast<int>(r.layer) <= k);
      const double bpp = bits_per_pixel(t);
      REQUIRE(bpp >= previous);
      previous = bpp;
    }
  }
}

TEST_CASE("bits per pixel counts every byte") {
  LayeredBitstream bs;
  bs.header.width = 512;
  bs.header.height = 512;
  CHECK(bits_per_pixel(serialize(bs)) == doctest::Approx(0.00030517578125).epsilon(1e-15));

  bs.layers.push_back({LayerId::kSemantic, codec::kStored, Bytes(504, 'a')});
  const Bytes b = serialize(bs);
  REQUIRE(b.size() == 520);
  CHECK(bits_per_pixel(b) == doctest::Approx(520.0 * 8 / 262144).epsilon(1e-15));
  CHECK(bits_per_pixel(b) == doctest::Approx(0.0158691406));

  CHECK_THROWS_AS(bits_per_pixel(Bytes{'n', 'o', 'p', 'e'}), Error);
}
