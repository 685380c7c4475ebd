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

#include "lcmc/condition_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc {
namespace {

void check_canvas(int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "render target must be non-empty, got " + std::to_string(w) +
                    "x" + std::to_string(h));
  }
}

struct Point {
  double x;
  double y;
};

double distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  }
  const double ex = p.x - (a.x + t * dx);
  const double ey = p.y - (a.y + t * dy);
  return std::sqrt(ex * ex + ey * ey);
}

// Paints every pixel within `radius` of segment ab.
void stroke(ImageBuffer& img, Point a, Point b, double radius, Rgb color) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius)));
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius)));
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (distance_to_segment({double(x), double(y)}, a, b) <= radius) {
        img.set(x, y, color);
      }
    }
  }
}

}  // namespace

int limb_stroke_width(int w, int h) {
  return std::max(1, static_cast<int>(std::lround(4.0 * std::min(w, h) / 512.0)));
}

ImageBuffer render_pose(const PoseMap& p, int w, int h) {
  check_canvas(w, h);
  ImageBuffer img(w, h);
  const double radius = limb_stroke_width(w, h) / 2.0;
  for (const auto& person : p.persons) {
    const auto& kps = person.keypoints;
    auto at = [&](std::size_t k) {
      return Point{keypoint_pixel(kps[k].qx, w), keypoint_pixel(kps[k].qy, h)};
    };
    const std::size_t body = std::min(kps.size(), kBodyKeypoints);
    for (std::size_t i = 0; i < kLimbPairs.size(); ++i) {
      const auto [a, b] = kLimbPairs[i];
      if (static_cast<std::size_t>(std::max(a, b)) >= body) continue;
      if (!kps[a].present || !kps[b].present) continue;
      stroke(img, at(a), at(b), radius, kSkeletonColors[i]);
    }
    for (std::size_t k = 0; k < body; ++k) {
      if (kps[k].present) stroke(img, at(k), at(k), radius, kSkeletonColors[k]);
    }
    for (std::size_t k = body; k < kps.size(); ++k) {
      if (kps[k].present) stroke(img, at(k), at(k), 1.0, kFaceDotColor);
    }
  }
  return img;
}

ImageBuffer render_edges(const EdgeMap& e, int w, int h) {
  check_canvas(w, h);
  check_edge_dimensions(e, w, h);
  ImageBuffer img(w, h);
  const int s = e.downscale;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (e.grid.get(x / s, y / s)) img.set(x, y, {255, 255, 255});
    }
  }
  return img;
}

ImageBuffer render_texture(const TextureMap& t, int w, int h,
                           TextureUpsample mode) {
  constexpr int g = TextureMap::kGrid;
  check_canvas(w, h);
  if (w % g != 0 || h % g != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "texture render needs dimensions divisible by 8, got " +
                    std::to_string(w) + "x" + std::to_string(h));
  }
  const int bw = w / g;
  const int bh = h / g;
  ImageBuffer img(w, h);

  if (mode == TextureUpsample::kNearest) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) img.set(x, y, t.at(y / bh, x / bw));
    }
    return img;
  }

  // Positions are doubled so that half-block offsets stay integral:
  // u = (2x - bw) / (2 bw) in cell units, clamped to [0, 7].
  const std::int64_t dx = 2 * bw;
  const std::int64_t dy = 2 * bh;
  const std::int64_t den = dx * dy;
  for (int y = 0; y < h; ++y) {
    const std::int64_t py = std::clamp<std::int64_t>(2 * y - bh, 0, (g - 1) * dy);
    const int r0 = static_cast<int>(py / dy);
    const std::int64_t fy = py % dy;
    const int r1 = std::min(r0 + 1, g - 1);
    for (int x = 0; x < w; ++x) {
      const std::int64_t px = std::clamp<std::int64_t>(2 * x - bw, 0, (g - 1) * dx);
      const int c0 = static_cast<int>(px / dx);
      const std::int64_t fx = px % dx;
      const int c1 = std::min(c0 + 1, g - 1);
      const std::int64_t w00 = (dx - fx) * (dy - fy);
      const std::int64_t w01 = fx * (dy - fy);
      const std::int64_t w10 = (dx - fx) * fy;
      const std::int64_t w11 = fx * fy;
      auto blend = [&](auto channel) {
        const std::int64_t num = w00 * channel(t.at(r0, c0)) + w01 * channel(t.at(r0, c1)) +
                                 w10 * channel(t.at(r1, c0)) + w11 * channel(t.at(r1, c1));
        return static_cast<std::uint8_t>((2 * num + den) / (2 * den));
      };
      img.set(x, y, {blend([](Rgb c) { return std::int64_t{c.r}; }),
                     blend([](Rgb c) { return std::int64_t{c.g}; }),
                     blend([](Rgb c) { return std::int64_t{c.b}; })});
    }
  }
  return img;
}

}  // namespace lcmc
