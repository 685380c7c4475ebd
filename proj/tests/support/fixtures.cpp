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

#include "fixtures.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "lcmc/pipeline.hpp"

namespace lcmc::fixtures {
namespace {

struct Scene {
  Rgb sky_top, sky_bottom, ground;
  int horizon;
};

Rgb lerp(Rgb a, Rgb b, double t) {
  auto ch = [t](int x, int y) {
    return static_cast<std::uint8_t>(std::lround(x + (y - x) * t));
  };
  return {ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

void fill_disc(ImageBuffer& img, int cx, int cy, int r, Rgb c) {
  for (int y = std::max(0, cy - r); y <= std::min(img.height() - 1, cy + r); ++y) {
    for (int x = std::max(0, cx - r); x <= std::min(img.width() - 1, cx + r); ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img.set(x, y, c);
    }
  }
}

void fill_rect(ImageBuffer& img, int x0, int y0, int x1, int y1, Rgb c) {
  for (int y = std::max(0, y0); y < std::min(img.height(), y1); ++y) {
    for (int x = std::max(0, x0); x < std::min(img.width(), x1); ++x) img.set(x, y, c);
  }
}

// Isosceles triangle with apex (cx, top) and base [cx - half, cx + half] at
// `bottom`.
void fill_triangle(ImageBuffer& img, int cx, int top, int half, int bottom, Rgb c) {
  for (int y = std::max(0, top); y < std::min(img.height(), bottom); ++y) {
    const int w = half * (y - top) / std::max(1, bottom - top);
    for (int x = std::max(0, cx - w); x <= std::min(img.width() - 1, cx + w); ++x) {
      img.set(x, y, c);
    }
  }
}

constexpr std::array<const char*, 10> kCaptions = {
    "a red sun setting over a calm green meadow",
    "a small cottage with a dark roof under a blue sky",
    "two round balloons floating above a sandy beach",
    "a lighthouse on a rocky shore at dusk",
    "an abstract painting of colored squares",
    "a person standing in a field with arms outstretched",
    "a mountain peak covered in snow at noon",
    "a still life with an orange and a blue vase",
    "a dancer posing on an empty stage",
    "a quiet lake reflecting a pale morning sky",
};

}  // namespace

ImageBuffer corpus_image(int index) {
  std::mt19937 rng(1000u + static_cast<unsigned>(index));
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  const Scene s{{static_cast<std::uint8_t>(pick(60, 140)), static_cast<std::uint8_t>(pick(100, 180)),
                 static_cast<std::uint8_t>(pick(180, 250))},
                {static_cast<std::uint8_t>(pick(150, 230)), static_cast<std::uint8_t>(pick(170, 230)),
                 static_cast<std::uint8_t>(pick(200, 250))},
                {static_cast<std::uint8_t>(pick(30, 110)), static_cast<std::uint8_t>(pick(80, 160)),
                 static_cast<std::uint8_t>(pick(20, 90))},
                pick(280, 400)};
  ImageBuffer img(kSize, kSize);
  for (int y = 0; y < kSize; ++y) {
    const Rgb row = y < s.horizon ? lerp(s.sky_top, s.sky_bottom, double(y) / s.horizon)
                                  : s.ground;
    for (int x = 0; x < kSize; ++x) img.set(x, y, row);
  }
  // Sun or moon.
  fill_disc(img, pick(60, 450), pick(50, 150), pick(25, 50),
            {255, static_cast<std::uint8_t>(pick(120, 230)), static_cast<std::uint8_t>(pick(0, 80))});
  // A building with a roof.
  const int bx = pick(60, 300);
  const int bw = pick(80, 140);
  const int bh = pick(60, 120);
  const Rgb wall{static_cast<std::uint8_t>(pick(150, 220)), static_cast<std::uint8_t>(pick(120, 180)),
                 static_cast<std::uint8_t>(pick(90, 140))};
  fill_rect(img, bx, s.horizon - bh, bx + bw, s.horizon + 10, wall);
  fill_triangle(img, bx + bw / 2, s.horizon - bh - pick(40, 70), bw / 2 + 10, s.horizon - bh,
                {static_cast<std::uint8_t>(pick(60, 120)), 30, 30});
  fill_rect(img, bx + bw / 3, s.horizon - 40, bx + bw / 3 + 24, s.horizon + 10, {50, 35, 25});
  // Low-contrast hills that stay below the edge threshold.
  for (int x = 0; x < kSize; ++x) {
    const int hill = static_cast<int>(18 * std::sin(x * std::numbers::pi / 128.0 + index));
    for (int y = s.horizon + 40 + hill; y < kSize; ++y) {
      Rgb c = img.at(x, y);
      c.g = static_cast<std::uint8_t>(std::min(255, c.g + 12));
      img.set(x, y, c);
    }
  }
  // Faint deterministic grain.
  std::mt19937 grain(77u + static_cast<unsigned>(index));
  auto& px = img.pixels();
  for (auto& v : px) {
    const int n = static_cast<int>(grain() % 7) - 3;
    v = static_cast<std::uint8_t>(std::clamp(v + n, 0, 255));
  }
  return img;
}

std::string corpus_caption(int index) { return kCaptions.at(static_cast<std::size_t>(index)); }


PoseMap reference_pose() {
  // COCO-18 order: nose, neck, r-shoulder, r-elbow, r-wrist, l-shoulder,
  // l-elbow, l-wrist, r-hip, r-knee, r-ankle, l-hip, l-knee, l-ankle,
  // r-eye, l-eye, r-ear, l-ear.
  constexpr std::array<std::array<double, 2>, 18> body = {{
      {0.50, 0.16}, {0.50, 0.27}, {0.40, 0.28}, {0.28, 0.38}, {0.15, 0.47},
      {0.60, 0.28}, {0.72, 0.38}, {0.85, 0.47}, {0.44, 0.56}, {0.41, 0.75},
      {0.38, 0.94}, {0.56, 0.56}, {0.59, 0.75}, {0.62, 0.94}, {0.48, 0.14},
      {0.52, 0.14}, {0.46, 0.15}, {0.54, 0.15},
  }};
  PosePerson person = PosePerson::blank();
  for (std::size_t k = 0; k < body.size(); ++k) {
    person.keypoints[k] = {true, quantize_coord(body[k][0]), quantize_coord(body[k][1])};
  }
  for (std::size_t f = 0; f < kFaceKeypoints; ++f) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(f) / kFaceKeypoints;
    const double r = 0.3 + 0.7 * static_cast<double>(f % 5) / 4.0;
    person.keypoints[kBodyKeypoints + f] = {
        true, quantize_coord(0.50 + 0.05 * r * std::cos(a)),
        quantize_coord(0.15 + 0.06 * r * std::sin(a))};
  }
  return PoseMap{{person}};
}

std::optional<PoseMap> corpus_pose(int index) {
  if (index == 5) return reference_pose();
  if (index != 8) return std::nullopt;
  PoseMap small = reference_pose();
  for (auto& kp : small.persons[0].keypoints) {
    kp.qx = static_cast<std::uint8_t>(30 + kp.qx / 3);
    kp.qy = static_cast<std::uint8_t>(40 + kp.qy / 3);
  }
  return small;
}

std::string reference_caption_200() {
  std::string s =
      "a young woman in a flowing red dress dancing barefoot on a sunlit wooden "
      "stage, arms raised gracefully, soft golden light from the left, blurred "
      "theater seats behind her, cinematic, highly detailed portrait";
  s.resize(200, '.');
  return s;
}

ImageBuffer half_black_white(int size) {
  ImageBuffer img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = size / 2; x < size; ++x) img.set(x, y, {255, 255, 255});
  }
  return img;
}

std::vector<std::pair<std::string, Bytes>> golden_containers() {
  std::vector<std::pair<std::string, Bytes>> out;

  LayeredBitstream header_only;
  header_only.header.width = kSize;
  header_only.header.height = kSize;
  out.emplace_back("header_only", serialize(header_only));

  {
    OfflineExtractors ex(corpus_caption(0));
    EncodeOptions opt;
    opt.variant = VariantChoice::kEdge;
    out.emplace_back("edge_scene", serialize(encode_image(corpus_image(0), ex, opt)));
  }
  {
    OfflineExtractors ex(reference_caption_200(), reference_pose());
    EncodeOptions opt;
    opt.variant = VariantChoice::kPose;
    out.emplace_back("pose_person", serialize(encode_image(corpus_image(5), ex, opt)));
  }
  {
    OfflineExtractors ex("a black and white split");
    EncodeOptions opt;
    opt.variant = VariantChoice::kEdge;
    out.emplace_back("half_black_white", serialize(encode_image(half_black_white(), ex, opt)));
  }
  {
    OfflineExtractors ex("a flat field of color");
    EncodeOptions opt;
    opt.variant = VariantChoice::kEdge;
    out.emplace_back("uniform_color",
                     serialize(encode_image(ImageBuffer(kSize, kSize, Rgb{100, 150, 200}), ex, opt)));
  }
  return out;
}

std::filesystem::path fixture_dir() { return LCMC_FIXTURE_DIR; }

}  // namespace lcmc::fixtures
