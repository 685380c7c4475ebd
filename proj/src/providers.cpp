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

#include "lcmc/providers.hpp"

#include <bit>
#include <cstring>
#include <random>

#include "lcmc/error.hpp"

namespace lcmc {
namespace {

class Fnv1a {
 public:
  void add(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add_u64(std::uint64_t v) {
    std::uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(v >> (8 * i));
    add(le, 8);
  }
  void add_double(double v) { add_u64(std::bit_cast<std::uint64_t>(v)); }
  void add_image(const std::optional<ImageBuffer>& img) {
    add_u64(img.has_value());
    if (!img) return;
    add_u64(static_cast<std::uint64_t>(img->width()));
    add_u64(static_cast<std::uint64_t>(img->height()));
    add(img->pixels().data(), img->pixels().size());
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

void GenerationParams::validate() const {
  if (steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "steps must be >= 1");
  }
  if (!(guidance_scale >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "guidance scale must be >= 0");
  }
}

std::string OfflineExtractors::caption(const ImageBuffer&) { return caption_; }

EdgeMap OfflineExtractors::edges(const ImageBuffer& img, std::uint8_t threshold) {
  return detect_edges_fallback(img, threshold);
}

PoseMap OfflineExtractors::pose(const ImageBuffer&) {
  if (!pose_) {
    throw Error(ErrorCode::kExtractor,
                "no pose detector available offline (supply a pose file)");
  }
  return *pose_;
}

std::uint64_t request_fingerprint(const GenerationRequest& request) {
  Fnv1a h;
  const auto& c = request.conditions;
  h.add_u64(c.prompt.size());
  h.add(c.prompt.data(), c.prompt.size());
  h.add_u64(static_cast<std::uint64_t>(c.structure_kind));
  h.add_image(c.structure_image);
  h.add_image(c.texture_image);
  h.add_double(request.params.guidance_scale);
  h.add_u64(static_cast<std::uint64_t>(request.params.steps));
  h.add_double(request.params.condition_scale);
  h.add_u64(request.params.seed);
  h.add_u64(static_cast<std::uint64_t>(request.width));
  h.add_u64(static_cast<std::uint64_t>(request.height));
  return h.value();
}

ImageBuffer StubGenerator::generate(const GenerationRequest& request) {
  if (request.conditions.texture_image) return *request.conditions.texture_image;
  ImageBuffer img(request.width, request.height);
  // mt19937_64 output is fully specified by the standard; distributions are
  // not, so raw engine words are sliced into bytes.
  std::mt19937_64 engine(request_fingerprint(request));
  auto& px = img.pixels();
  for (std::size_t i = 0; i < px.size(); i += 8) {
    const std::uint64_t word = engine();
    for (std::size_t k = 0; k < 8 && i + k < px.size(); ++k) {
      px[i + k] = static_cast<std::uint8_t>(word >> (8 * k));
    }
  }
  return img;
}

}  // namespace lcmc
