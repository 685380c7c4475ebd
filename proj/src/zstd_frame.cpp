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

#include "lcmc/zstd_frame.hpp"

#include <zstd.h>

#include <memory>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc::zstd {
namespace {

struct CCtxDeleter {
  void operator()(ZSTD_CCtx* ctx) const { ZSTD_freeCCtx(ctx); }
};

void check(std::size_t rc, const char* what) {
  if (ZSTD_isError(rc)) {
    throw Error(ErrorCode::kDecode,
                std::string(what) + ": " + ZSTD_getErrorName(rc));
  }
}

}  // namespace

Bytes compress(ByteView input, int level) {
  if (level < 1 || level > ZSTD_maxCLevel()) {
    throw Error(ErrorCode::kInvalidArgument,
                "zstd level out of range: " + std::to_string(level));
  }
  std::unique_ptr<ZSTD_CCtx, CCtxDeleter> ctx(ZSTD_createCCtx());
  if (!ctx) throw Error(ErrorCode::kEncoding, "ZSTD_createCCtx failed");
  ZSTD_CCtx_setParameter(ctx.get(), ZSTD_c_compressionLevel, level);
  ZSTD_CCtx_setParameter(ctx.get(), ZSTD_c_checksumFlag, 0);
  ZSTD_CCtx_setParameter(ctx.get(), ZSTD_c_contentSizeFlag, 1);

  Bytes out(ZSTD_compressBound(input.size()));
  const std::size_t rc = ZSTD_compress2(ctx.get(), out.data(), out.size(),
                                        input.data(), input.size());
  if (ZSTD_isError(rc)) {
    throw Error(ErrorCode::kEncoding,
                std::string("zstd compress: ") + ZSTD_getErrorName(rc));
  }
  out.resize(rc);
  return out;
}

Bytes decompress(ByteView frame, std::size_t max_size) {
  const std::size_t frame_size =
      ZSTD_findFrameCompressedSize(frame.data(), frame.size());
  check(frame_size, "zstd frame");
  if (frame_size != frame.size()) {
    throw Error(ErrorCode::kDecode, "trailing bytes after zstd frame");
  }
  const unsigned long long content =
      ZSTD_getFrameContentSize(frame.data(), frame.size());
  if (content == ZSTD_CONTENTSIZE_ERROR) {
    throw Error(ErrorCode::kDecode, "not a zstd frame");
  }
  if (content == ZSTD_CONTENTSIZE_UNKNOWN) {
    throw Error(ErrorCode::kDecode, "zstd frame without content size");
  }
  if (content > max_size) {
    throw Error(ErrorCode::kDecode, "zstd frame content exceeds limit");
  }
  Bytes out(static_cast<std::size_t>(content));
  const std::size_t rc =
      ZSTD_decompress(out.data(), out.size(), frame.data(), frame.size());
  check(rc, "zstd decompress");
  if (rc != out.size()) {
    throw Error(ErrorCode::kDecode, "zstd frame size mismatch");
  }
  return out;
}

}  // namespace lcmc::zstd
