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
#include "lcmc/edit_ops.hpp"
#include "lcmc/error.hpp"
#include "lcmc/semantic_codec.hpp"
#include "lcmc/texture_codec.hpp"
#include "oracles.hpp"

using namespace lcmc;
using namespace lcmc::edit;

namespace {

LayeredBitstream golden(const std::string& name) {
  for (const auto& [n, bytes] : fixtures::golden_containers()) {
    if (n == name) return parse(bytes);
  }
  FAIL("no golden container " << name);
  return {};
}

LayeredBitstream pose_container(const PoseMap& p, const TextureMap& t = {}) {
  LayeredBitstream bs;
  bs.header = {kFormatVersion, 512, 512, StructureVariant::kPose};
  const EncodedPayload cap = encode_semantic({"someone"});
  bs.layers.push_back({LayerId::kSemantic, cap.codec_id, cap.bytes});
  bs.layers.push_back({LayerId::kStructure, codec::kPoseZstd, encode_pose(p)});
  bs.layers.push_back({LayerId::kTexture, codec::kStored, encode_texture(t)});
  return bs;
}

LayeredBitstream edge_container(const BitGrid& g, const TextureMap& t = {}) {
  LayeredBitstream bs;
  bs.header = {kFormatVersion, static_cast<std::uint16_t>(g.width() * 2),
               static_cast<std::uint16_t>(g.height() * 2), StructureVariant::kEdge};
  bs.layers.push_back({LayerId::kSemantic, codec::kStored, Bytes{'x'}});
  EdgeMap e;
  e.grid = g;
  bs.layers.push_back({LayerId::kStructure, codec::kEdgeReference,
                       encode_edges(e, codec::kEdgeReference)});
  bs.layers.push_back({LayerId::kTexture, codec::kStored, encode_texture(t)});
  return bs;
}

PoseMap one_keypoint(std::uint8_t qx, std::uint8_t qy) {
  PoseMap p;
  p.persons.push_back(PosePerson::blank());
  p.persons[0].keypoints[0] = {true, qx, qy};
  return p;
}

BitGrid grid_of(const LayeredBitstream& bs) {
  const LayerRecord* r = bs.find(LayerId::kStructure);
  return decode_edges(r->payload, r->codec_id, bs.header.width, bs.header.height).grid;
}

TextureMap texture_of(const LayeredBitstream& bs) {
  return decode_texture(bs.find(LayerId::kTexture)->payload);
}

void require_untouched(const LayeredBitstream& before, const LayeredBitstream& after,
                       LayerId edited, LayerId also_edited = LayerId::kSemantic) {
  REQUIRE(before.header == after.header);
  REQUIRE(before.layers.size() == after.layers.size());
  for (std::size_t i = 0; i < before.layers.size(); ++i) {
    const LayerId id = before.layers[i].layer;
    if (id == edited || (id == also_edited && id != LayerId::kSemantic)) continue;
    REQUIRE(before.layers[i] == after.layers[i]);
  }
  REQUIRE(parse(serialize(after)) == after);
}

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

}  // namespace

TEST_CASE("pose_translate") {
  const LayeredBitstream bs = golden("pose_person");

  SUBCASE("zero offset leaves the payload unchanged") {
    const LayeredBitstream out = pose_translate(bs, 0, {0, 1, 2, 40}, 0.0, 0.0);
    CHECK(out == bs);
  }
  SUBCASE("moves by whole grid steps") {
    const LayeredBitstream in = pose_container(one_keypoint(50, 50));
    const LayeredBitstream out = pose_translate(in, 0, {0}, 0.10, 0.0);
    const PoseKeypoint kp = decode_pose(out.find(LayerId::kStructure)->payload).persons[0].keypoints[0];
    CHECK(kp == PoseKeypoint{true, 60, 50});
    require_untouched(in, out, LayerId::kStructure);
  }
  SUBCASE("clamps at the border") {
    const LayeredBitstream in = pose_container(one_keypoint(98, 50));
    const LayeredBitstream out = pose_translate(in, 0, {0}, 0.10, -0.7);
    const PoseKeypoint kp = decode_pose(out.find(LayerId::kStructure)->payload).persons[0].keypoints[0];
    CHECK(kp == PoseKeypoint{true, 100, 0});
  }
  SUBCASE("errors") {
    CHECK(error_of([&] { pose_translate(bs, 1, {0}, 0.1, 0); }) == ErrorCode::kOutOfRange);
    CHECK(error_of([&] { pose_translate(bs, 0, {88}, 0.1, 0); }) == ErrorCode::kOutOfRange);
    CHECK(error_of([&] { pose_translate(pose_container(one_keypoint(5, 5)), 0, {3}, 0.1, 0); }) ==
          ErrorCode::kInvalidArgument);
    CHECK(error_of([] { pose_translate(golden("edge_scene"), 0, {0}, 0.1, 0); }) ==
          ErrorCode::kWrongVariant);
  }
}

TEST_CASE("edge_stencil") {
  const LayeredBitstream bs = golden("edge_scene");
  const BitGrid g = grid_of(bs);
  REQUIRE(g.count() > 0);

  SUBCASE("adding nothing keeps the grid") {
    const LayeredBitstream out = edge_stencil(bs, BitGrid(g.width(), g.height()), StencilMode::kAdd);
    CHECK(grid_of(out) == g);
    require_untouched(bs, out, LayerId::kStructure);
  }
  SUBCASE("subtracting the grid clears it") {
    CHECK(grid_of(edge_stencil(bs, g, StencilMode::kSubtract)).count() == 0);
  }
  SUBCASE("add then subtract a disjoint stencil is the identity") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 20; ++i) {
      const BitGrid base = oracle::random_grid(rng, 48, 40, 0.3);
      BitGrid stencil = oracle::random_grid(rng, 48, 40, 0.3);
      for (int y = 0; y < 40; ++y) {
        for (int x = 0; x < 48; ++x) {
          if (base.get(x, y)) stencil.set(x, y, false);
        }
      }
      const LayeredBitstream in = edge_container(base);
      const LayeredBitstream added = edge_stencil(in, stencil, StencilMode::kAdd);
      REQUIRE(grid_of(edge_stencil(added, stencil, StencilMode::kSubtract)) == base);
    }
  }
  SUBCASE("errors") {
    CHECK(error_of([&] { edge_stencil(bs, BitGrid(3, 3), StencilMode::kAdd); }) ==
          ErrorCode::kDimensionMismatch);
    CHECK(error_of([] { edge_stencil(golden("pose_person"), BitGrid(256, 256), StencilMode::kAdd); }) ==
          ErrorCode::kWrongVariant);
  }
}

TEST_CASE("texture_patch") {
  const LayeredBitstream bs = golden("edge_scene");
  const TextureMap before = texture_of(bs);

  CHECK(serialize(texture_patch(bs, {})) == serialize(bs));

  const LayeredBitstream one = texture_patch(bs, {{0, 0, {255, 0, 0}}});
  require_untouched(bs, one, LayerId::kTexture);
  const TextureMap after = texture_of(one);
  CHECK(after.at(0, 0) == Rgb{255, 0, 0});
  for (std::size_t i = 1; i < 64; ++i) REQUIRE(after.cells[i] == before.cells[i]);

  std::mt19937_64 rng(6);
  const TextureMap target = oracle::random_texture(rng);
  std::vector<CellPatch> all;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) all.push_back({r, c, target.at(r, c)});
  }
  CHECK(texture_of(texture_patch(bs, all)) == target);

  CHECK(error_of([&] { texture_patch(bs, {{8, 0, {}}}); }) == ErrorCode::kOutOfRange);
  CHECK(error_of([&] { texture_patch(bs, {{0, -1, {}}}); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("texture_swap") {
  const LayeredBitstream a = golden("edge_scene");
  const LayeredBitstream b = golden("uniform_color");

  CHECK(serialize(texture_swap(a, a)) == serialize(a));

  const Bytes saved = a.find(LayerId::kTexture)->payload;
  const LayeredBitstream swapped = texture_swap(a, b);
  require_untouched(a, swapped, LayerId::kTexture);
  CHECK(swapped.find(LayerId::kTexture)->payload == b.find(LayerId::kTexture)->payload);
  CHECK(serialize(texture_swap(swapped, saved)) == serialize(a));

  LayeredBitstream shallow = b;
  shallow.layers.pop_back();
  CHECK(error_of([&] { texture_swap(a, shallow); }) == ErrorCode::kMissingLayer);
  CHECK(error_of([&] { texture_swap(shallow, a); }) == ErrorCode::kMissingLayer);
  CHECK(error_of([&] { texture_swap(a, Bytes(194, 8)); }) == ErrorCode::kLengthMismatch);
}

TEST_CASE("erase_object") {
  SUBCASE("full-frame erase on an edge container") {
    const LayeredBitstream bs = golden("edge_scene");
    const LayeredBitstream out = erase_object(bs, {0, 0, 1, 1});
    require_untouched(bs, out, LayerId::kStructure, LayerId::kTexture);
    CHECK(out.layers[0] == bs.layers[0]);
    CHECK(grid_of(out).count() == 0);
    for (const Rgb& c : texture_of(out).cells) REQUIRE(c == kEraseFallback);
  }
  SUBCASE("left half of the split fixture becomes white") {
    const LayeredBitstream bs = golden("half_black_white");
    const LayeredBitstream out = erase_object(bs, {0, 0, 0.5, 1.0});
    CHECK(out.layers[0] == bs.layers[0]);
    for (const Rgb& c : texture_of(out).cells) REQUIRE(c == Rgb{255, 255, 255});
  }
  SUBCASE("touching a cell boundary does not erase the neighbour") {
    std::mt19937_64 rng(1);
    const TextureMap t = oracle::random_texture(rng);
    const LayeredBitstream bs = edge_container(BitGrid(32, 32), t);
    const TextureMap out = texture_of(erase_object(bs, {0.125, 0.125, 0.25, 0.25}));
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        if (r == 1 && c == 1) continue;
        REQUIRE(out.at(r, c) == t.at(r, c));
      }
    }
    // Mean of the 63 survivors, computed independently.
    std::uint64_t sum[3] = {0, 0, 0};
    for (int i = 0; i < 64; ++i) {
      if (i == 9) continue;
      sum[0] += t.cells[i].r;
      sum[1] += t.cells[i].g;
      sum[2] += t.cells[i].b;
    }
    const auto mean = [](std::uint64_t s) {
      return static_cast<std::uint8_t>(std::floor(static_cast<double>(s) / 63.0 + 0.5));
    };
    CHECK(out.at(1, 1) == Rgb{mean(sum[0]), mean(sum[1]), mean(sum[2])});
  }
  SUBCASE("edge bits are cleared by footprint") {
    BitGrid g(32, 32);
    g.set(3, 3, true);
    g.set(4, 3, true);
    g.set(20, 20, true);
    // Pixels 0..7 in a 64-wide image; grid cell 4 covers pixels 8..9.
    const LayeredBitstream out = erase_object(edge_container(g), {0, 0, 8.0 / 64, 8.0 / 64});
    const BitGrid after = grid_of(out);
    CHECK_FALSE(after.get(3, 3));
    CHECK(after.get(4, 3));
    CHECK(after.get(20, 20));
  }
  SUBCASE("pose keypoints inside the region are dropped") {
    PoseMap p;
    PosePerson a = PosePerson::blank();
    a.keypoints[0] = {true, 10, 10};
    a.keypoints[1] = {true, 80, 80};
    PosePerson b = PosePerson::blank();
    b.keypoints[0] = {true, 20, 20};
    p.persons = {a, b};
    const LayeredBitstream bs = pose_container(p);
    const LayeredBitstream out = erase_object(bs, {0, 0, 0.3, 0.3});
    const PoseMap after = decode_pose(out.find(LayerId::kStructure)->payload);
    REQUIRE(after.persons.size() == 1);
    CHECK_FALSE(after.persons[0].keypoints[0].present);
    CHECK(after.persons[0].keypoints[1] == PoseKeypoint{true, 80, 80});
    CHECK(out.layers[0] == bs.layers[0]);

    const LayeredBitstream untouched = erase_object(bs, {0.5, 0.0, 0.6, 0.1});
    CHECK(untouched.layers[1] == bs.layers[1]);

    CHECK(error_of([&] { erase_object(bs, {0, 0, 1, 1}); }) == ErrorCode::kInvalidArgument);
  }
  SUBCASE("region validation") {
    const LayeredBitstream bs = golden("edge_scene");
    CHECK(error_of([&] { erase_object(bs, {0.5, 0, 0.4, 1}); }) == ErrorCode::kInvalidArgument);
    CHECK(error_of([&] { erase_object(bs, {-0.1, 0, 0.4, 1}); }) == ErrorCode::kInvalidArgument);
  }
}
