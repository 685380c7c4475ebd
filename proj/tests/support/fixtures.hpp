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

#ifndef LCMC_TESTS_FIXTURES_HPP_
#define LCMC_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcmc/container.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"

// Deterministic test fixtures shared by the unit tests, the acceptance
// suite and tools/make_fixtures (which writes them under tests/fixtures).
namespace lcmc::fixtures {

inline constexpr int kSize = 512;

/// Synthetic scene number `index` (0..9): smooth background plus a few
/// flat-shaded shapes.
ImageBuffer corpus_image(int index);
std::string corpus_caption(int index);
/// Pose sidecar for a corpus image, if it ships one. Image 5 carries the
/// full-frame reference pose, image 8 a small figure below the auto-variant
/// coverage threshold.
std::optional<PoseMap> corpus_pose(int index);

/// One full-schema person (18 body + 70 face keypoints) standing across
/// most of the frame.
PoseMap reference_pose();

/// Exactly 200 characters.
std::string reference_caption_200();

/// Left half black, right half white.
ImageBuffer half_black_white(int size = kSize);

/// Named golden containers, in manifest order.
std::vector<std::pair<std::string, Bytes>> golden_containers();

/// Directory holding the shipped fixture files (set at compile time).
std::filesystem::path fixture_dir();

}  // namespace lcmc::fixtures

#endif  // LCMC_TESTS_FIXTURES_HPP_
