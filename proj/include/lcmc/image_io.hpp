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

#ifndef LCMC_IMAGE_IO_HPP_
#define LCMC_IMAGE_IO_HPP_

#include <filesystem>

#include "lcmc/bytes.hpp"
#include "lcmc/image.hpp"
#include "lcmc/structure_codec.hpp"

namespace lcmc::io {

/// PNG (any color type, converted to 8-bit RGB) or binary PPM (P6).
ImageBuffer read_image(const std::filesystem::path& path);
ImageBuffer decode_image(ByteView data);

Bytes encode_png(const ImageBuffer& img);
Bytes encode_ppm(const ImageBuffer& img);

/// Format by extension: ".ppm" writes P6, anything else PNG.
void write_image(const std::filesystem::path& path, const ImageBuffer& img);

/// 1-bit stencil: PBM (P1/P4, 1 = set) or any image readable by
/// read_image (non-black pixel = set).
BitGrid read_bitmap(const std::filesystem::path& path);
Bytes encode_pbm(const BitGrid& grid);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

}  // namespace lcmc::io

#endif  // LCMC_IMAGE_IO_HPP_
