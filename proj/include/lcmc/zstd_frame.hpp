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

#ifndef LCMC_ZSTD_FRAME_HPP_
#define LCMC_ZSTD_FRAME_HPP_

#include <cstddef>

#include "lcmc/bytes.hpp"

namespace lcmc::zstd {

inline constexpr int kDefaultLevel = 19;

/// Upper bound on the decompressed size accepted from a single frame.
inline constexpr std::size_t kMaxFrameContent = std::size_t{1} << 26;

/// Compresses `input` into a single Zstandard frame (content size recorded,
/// no checksum).
Bytes compress(ByteView input, int level = kDefaultLevel);

/// Decompresses a single complete frame. Throws Error(kDecode) on any
/// malformed, truncated or oversized input, including trailing garbage.
Bytes decompress(ByteView frame, std::size_t max_size = kMaxFrameContent);

}  // namespace lcmc::zstd

#endif  // LCMC_ZSTD_FRAME_HPP_
