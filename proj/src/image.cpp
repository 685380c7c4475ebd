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

#include "lcmc/image.hpp"

#include <string>

#include "lcmc/error.hpp"

namespace lcmc {
namespace {

std::size_t checked_size(int width, int height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "negative image dimensions " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  pixels_.resize(checked_size(width, height));
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != checked_size(width, height)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pixel buffer holds " + std::to_string(pixels_.size()) +
                    " bytes, expected " +
                    std::to_string(checked_size(width, height)));
  }
}

}  // namespace lcmc
