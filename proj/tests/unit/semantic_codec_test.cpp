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

#include <random>

#include "fixtures.hpp"
#include "lcmc/container.hpp"
#include "lcmc/error.hpp"
#include "lcmc/semantic_codec.hpp"
#include "lcmc/zstd_frame.hpp"
#include "oracles.hpp"

using namespace lcmc;

TEST_CASE("caption round-trips losslessly") {
  const SemanticPrior p{"a photo of an astronaut riding a horse"};
  const EncodedPayload enc = encode_semantic(p);
  CHECK(decode_semantic(enc.bytes, enc.codec_id) == p);
}

TEST_CASE("empty caption uses the stored codec") {
  const EncodedPayload enc = encode_semantic({""});
  CHECK(enc.codec_id == codec::kStored);
  CHECK(enc.bytes.empty());
  CHECK(decode_semantic(enc.bytes, enc.codec_id).text.empty());
}

TEST_CASE("200-character caption compresses to at most 200 bytes") {
  const std::string caption = fixtures::reference_caption_200();
  REQUIRE(caption.size() == 200);
  const EncodedPayload enc = encode_semantic({caption});
  CHECK(enc.codec_id == codec::kZstd);
  // Measured with zstd 1.5.7 at level 19: 138 bytes.
  CHECK(enc.bytes.size() <= 200);
}

TEST_CASE("random printable captions round-trip and never inflate past raw") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const SemanticPrior p{oracle::random_printable(rng, 300)};
    const EncodedPayload enc = encode_semantic(p);
    REQUIRE(enc.bytes.size() <= p.text.size());
    REQUIRE(decode_semantic(enc.bytes, enc.codec_id) == p);
  }
}

TEST_CASE("multi-byte UTF-8 survives") {
  const SemanticPrior p{"un caf\xC3\xA9 \xE6\x97\xA5\xE6\x9C\xAC \xF0\x9F\x90\xB4"};
  const EncodedPayload enc = encode_semantic(p);
  CHECK(decode_semantic(enc.bytes, enc.codec_id) == p);
}

TEST_CASE("caption cap and UTF-8 validation") {
  CHECK_THROWS_AS(encode_semantic({std::string(4097, 'a')}), Error);
  CHECK_NOTHROW(encode_semantic({std::string(4096, 'a')}));
  try {
    encode_semantic({"bad \xC3"});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEncoding);
  }
  CHECK_FALSE(is_valid_utf8("\xC0\x80"));          // overlong
  CHECK_FALSE(is_valid_utf8("\xED\xA0\x80"));      // surrogate
  CHECK_FALSE(is_valid_utf8("\xF4\x90\x80\x80"));  // past U+10FFFF
  CHECK(is_valid_utf8("\xF4\x8F\xBF\xBF"));
}

TEST_CASE("corrupt or truncated payloads are decode errors") {
  const EncodedPayload enc = encode_semantic({std::string(120, 'x') + "tail"});
  REQUIRE(enc.codec_id == codec::kZstd);
  const Bytes cut(enc.bytes.begin(), enc.bytes.end() - 3);
  try {
    decode_semantic(cut, codec::kZstd);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDecode);
  }
  CHECK_THROWS_AS(decode_semantic(Bytes{1, 2, 3, 4, 5}, codec::kZstd), Error);
  CHECK_THROWS_AS(decode_semantic(enc.bytes, 9), Error);
}

TEST_CASE("decompressed bytes that are not UTF-8 are encoding errors") {
  const Bytes bad = {'o', 'k', 0xFF, 0xFE, 'x'};
  const Bytes frame = zstd::compress(bad);
  try {
    decode_semantic(frame, codec::kZstd);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEncoding);
  }
}
