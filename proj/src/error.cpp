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

#include "lcmc/error.hpp"

namespace lcmc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kUnsupportedVersion: return "unsupported version";
    case ErrorCode::kInvalidHeader: return "invalid header";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kUnknownLayer: return "unknown layer";
    case ErrorCode::kLayerOrder: return "layer order";
    case ErrorCode::kDuplicateLayer: return "duplicate layer";
    case ErrorCode::kLadderViolation: return "ladder violation";
    case ErrorCode::kVariantMismatch: return "variant mismatch";
    case ErrorCode::kUnregisteredCodec: return "unregistered codec";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kDecode: return "decode error";
    case ErrorCode::kEncoding: return "encoding error";
    case ErrorCode::kUnsupportedGrid: return "unsupported grid";
    case ErrorCode::kInvariantViolation: return "invariant violation";
    case ErrorCode::kExternalUnavailable: return "external codec unavailable";
    case ErrorCode::kWrongVariant: return "wrong structure variant";
    case ErrorCode::kOutOfRange: return "index out of range";
    case ErrorCode::kMissingLayer: return "missing layer";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kExtractor: return "extractor failure";
    case ErrorCode::kBackend: return "backend failure";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

}  // namespace lcmc
