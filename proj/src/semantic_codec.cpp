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

#include "lcmc/semantic_codec.hpp"

#include "lcmc/container.hpp"
#include "lcmc/error.hpp"

namespace lcmc {
namespace {

void check_caption(std::string_view text) {
  if (text.size() > kMaxCaptionBytes) {
    throw Error(ErrorCode::kInvalidArgument,
                "caption is " + std::to_string(text.size()) +
                    " bytes, limit is 4096");
  }
  if (!is_valid_utf8(text)) {
    throw Error(ErrorCode::kEncoding, "caption is not valid UTF-8");
  }
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (s.size() - i <= extra) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

EncodedPayload encode_semantic(const SemanticPrior& p, int level) {
  check_caption(p.text);
  const ByteView raw = as_bytes(p.text);
  Bytes frame = zstd::compress(raw, level);
  if (frame.size() < raw.size()) return {codec::kZstd, std::move(frame)};
  return {codec::kStored, Bytes(raw.begin(), raw.end())};
}

SemanticPrior decode_semantic(ByteView payload, std::uint8_t codec_id) {
  Bytes raw;
  if (codec_id == codec::kZstd) {
    raw = zstd::decompress(payload, kMaxCaptionBytes);
  } else if (codec_id == codec::kStored) {
    raw.assign(payload.begin(), payload.end());
  } else {
    throw Error(ErrorCode::kUnregisteredCodec,
                "semantic codec " + std::to_string(codec_id));
  }
  SemanticPrior p{std::string(raw.begin(), raw.end())};
  check_caption(p.text);
  return p;
}

}  // namespace lcmc
