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

#include "fixtures.hpp"
#include "lcmc/error.hpp"
#include "lcmc/pipeline.hpp"
#include "lcmc/providers.hpp"

using namespace lcmc;

namespace {

class RecordingGenerator : public GeneratorProvider {
 public:
  ImageBuffer generate(const GenerationRequest& request) override {
    requests.push_back(request);
    return ImageBuffer(request.width + wrong_width, request.height, Rgb{1, 2, 3});
  }
  std::vector<GenerationRequest> requests;
  int wrong_width = 0;
};

class FailingExtractors : public OfflineExtractors {
 public:
  explicit FailingExtractors(bool fail_caption) : fail_caption_(fail_caption) {}
  std::string caption(const ImageBuffer& img) override {
    if (fail_caption_) throw Error(ErrorCode::kBackend, "connection refused");
    return OfflineExtractors::caption(img);
  }
  EdgeMap edges(const ImageBuffer&, std::uint8_t) override {
    throw Error(ErrorCode::kBackend, "connection refused");
  }

 private:
  bool fail_caption_;
};

// One person whose keypoints span a box covering `side` x `side` of the frame.
PoseMap square_person(std::uint8_t lo, std::uint8_t hi) {
  PoseMap p;
  PosePerson person = PosePerson::blank();
  person.keypoints[0] = {true, lo, lo};
  person.keypoints[1] = {true, hi, hi};
  p.persons.push_back(person);
  return p;
}

}  // namespace

TEST_CASE("encode with stub extractors gives a full edge container") {
  OfflineExtractors ex("test");
  const LayeredBitstream bs = encode_image(fixtures::corpus_image(0), ex);
  CHECK(bs.header.variant == StructureVariant::kEdge);
  CHECK(bs.depth() == 3);
  CHECK(bs.layers[1].codec_id == codec::kEdgeReference);
  CHECK(parse(serialize(bs)) == bs);
}

TEST_CASE("auto variant follows pose coverage") {
  const ImageBuffer img = fixtures::corpus_image(2);
  // 0.71^2 = 0.504 of the frame.
  OfflineExtractors half("a person", square_person(10, 81));
  CHECK(pose_coverage(square_person(10, 81)) == doctest::Approx(0.5041));
  CHECK(encode_image(img, half).header.variant == StructureVariant::kPose);

  OfflineExtractors small("a person", square_person(10, 70));
  CHECK(pose_coverage(square_person(10, 70)) == doctest::Approx(0.36));
  CHECK(encode_image(img, small).header.variant == StructureVariant::kEdge);

  OfflineExtractors nobody("a field", PoseMap{});
  CHECK(encode_image(img, nobody).header.variant == StructureVariant::kEdge);

  EncodeOptions force_pose;
  force_pose.variant = VariantChoice::kPose;
  CHECK(encode_image(img, small, force_pose).header.variant == StructureVariant::kPose);
  CHECK_THROWS_AS(encode_image(img, nobody, force_pose), ExtractorError);
}

TEST_CASE("constant image with a short caption stays under 0.02 bpp") {
  const std::string caption = "a flat blue-grey wall in morning light";
  REQUIRE(caption.size() == 38);
  OfflineExtractors ex(caption);
  const Bytes b = serialize(encode_image(ImageBuffer(512, 512, Rgb{90, 110, 130}), ex));
  CHECK(bits_per_pixel(b) < 0.02);
}

TEST_CASE("extractor failures name the layer") {
  const ImageBuffer img = fixtures::corpus_image(0);
  FailingExtractors caption_down(true);
  try {
    encode_image(img, caption_down);
    FAIL("expected an error");
  } catch (const ExtractorError& e) {
    CHECK(e.layer() == LayerId::kSemantic);
    CHECK(e.code() == ErrorCode::kExtractor);
  }
  FailingExtractors edges_down(false);
  try {
    encode_image(img, edges_down);
    FAIL("expected an error");
  } catch (const ExtractorError& e) {
    CHECK(e.layer() == LayerId::kStructure);
  }
}

TEST_CASE("encode rejects unusable images") {
  OfflineExtractors ex("x");
  CHECK_THROWS_AS(encode_image(ImageBuffer(60, 64), ex), Error);
  CHECK_THROWS_AS(encode_image(ImageBuffer(68, 64), ex), Error);
}

TEST_CASE("decode_layers exposes the requested prefix") {
  OfflineExtractors ex(fixtures::reference_caption_200(), fixtures::reference_pose());
  EncodeOptions opt;
  opt.variant = VariantChoice::kPose;
  const ImageBuffer img = fixtures::corpus_image(5);
  const LayeredBitstream bs = encode_image(img, ex, opt);

  const LayeredPriors p1 = decode_layers(bs, 1);
  CHECK(p1.semantic.text == fixtures::reference_caption_200());
  CHECK_FALSE(p1.has_structure());
  CHECK_FALSE(p1.texture);
  CHECK(p1.level() == 1);

  const LayeredPriors p2 = decode_layers(serialize(bs), 2);
  CHECK(std::get<PoseMap>(p2.structure) == fixtures::reference_pose());
  CHECK_FALSE(p2.texture);

  const LayeredPriors p3 = decode_layers(bs, 3);
  CHECK(p3.level() == 3);
  CHECK(*p3.texture == extract_texture(img));

  const Bytes two = truncate_to_layer(serialize(bs), 2);
  try {
    decode_layers(two, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingLayer);
  }
  CHECK_THROWS_AS(decode_layers(bs, 0), Error);
}

TEST_CASE("priors ladder") {
  LayeredPriors p;
  p.texture = TextureMap{};
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("reconstruct maps priors onto conditions") {
  OfflineExtractors ex("a red house");
  const LayeredBitstream bs = encode_image(fixtures::corpus_image(0), ex);
  GenerationParams params;
  params.seed = 7;

  RecordingGenerator gen;
  const GeneratedImage g1 = reconstruct(decode_layers(bs, 1), 512, 512, params, gen);
  REQUIRE(gen.requests.size() == 1);
  const ConditionSet& c1 = gen.requests[0].conditions;
  CHECK(c1.prompt == "a red house");
  CHECK_FALSE(c1.structure_image);
  CHECK_FALSE(c1.texture_image);
  CHECK(c1.structure_kind == StructureVariant::kNone);
  CHECK(g1.fidelity_level == 1);
  CHECK(gen.requests[0].params == params);

  const LayeredPriors p3 = decode_layers(bs, 3);
  const GeneratedImage g3 = reconstruct(p3, 512, 512, params, gen);
  const ConditionSet& c3 = gen.requests[1].conditions;
  CHECK(c3.prompt == "a red house");
  REQUIRE(c3.structure_image);
  REQUIRE(c3.texture_image);
  CHECK(c3.structure_kind == StructureVariant::kEdge);
  CHECK(*c3.structure_image == render_edges(std::get<EdgeMap>(p3.structure), 512, 512));
  CHECK(*c3.texture_image == render_texture(*p3.texture, 512, 512));
  CHECK(g3.fidelity_level == 3);
  CHECK(c3 == build_conditions(p3, 512, 512));

  gen.wrong_width = 8;
  try {
    reconstruct(p3, 512, 512, params, gen);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }

  GenerationParams bad;
  bad.steps = 0;
  CHECK_THROWS_AS(reconstruct(p3, 512, 512, bad, gen), Error);
}

TEST_CASE("stub generator is a pure function of conditions and seed") {
  OfflineExtractors ex("a red house");
  const LayeredBitstream bs = encode_image(fixtures::corpus_image(0), ex);
  StubGenerator stub;
  GenerationParams params;
  params.seed = 7;
  const LayeredPriors p2 = decode_layers(bs, 2);
  const ImageBuffer a = reconstruct(p2, 512, 512, params, stub).image;
  CHECK(reconstruct(p2, 512, 512, params, stub).image == a);
  params.seed = 8;
  CHECK_FALSE(reconstruct(p2, 512, 512, params, stub).image == a);

  const LayeredPriors p3 = decode_layers(bs, 3);
  CHECK(reconstruct(p3, 512, 512, params, stub).image == render_texture(*p3.texture, 512, 512));
}
