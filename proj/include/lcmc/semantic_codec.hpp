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

#ifndef LCMC_SEMANTIC_CODEC_HPP_
#define LCMC_SEMANTIC_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "lcmc/bytes.hpp"
#include "lcmc/zstd_frame.hpp"

namespace lcmc {

inline constexpr std::size_t kMaxCaptionBytes = 4096;

struct SemanticPrior {
  std::string text;

  bool operator==(const SemanticPrior&) const = default;
};

/// A layer payload together with the codec id that produced it.
struct EncodedPayload {
  std::uint8_t codec_id = 0;
  Bytes bytes;
};

bool is_valid_utf8(std::string_view s);

/// Zstd frame of the caption bytes (codec 1), or the raw bytes (codec 0)
/// whenever the frame would not be smaller.
EncodedPayload encode_semantic(const SemanticPrior& p,
                               int level = zstd::kDefaultLevel);

SemanticPrior decode_semantic(ByteView payload, std::uint8_t codec_id);

}  // namespace lcmc

#endif  // LCMC_SEMANTIC_CODEC_HPP_
