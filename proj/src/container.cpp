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

#include "lcmc/container.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc {
namespace {

std::string layer_name(int id) {
  if (id >= 1 && id <= 3) {
    return std::string(to_string(static_cast<LayerId>(id)));
  }
  return "layer " + std::to_string(id);
}

void validate_header(const ContainerHeader& h) {
  if (h.version != kFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "version " + std::to_string(h.version));
  }
  if (h.width < kMinDimension || h.height < kMinDimension) {
    throw Error(ErrorCode::kInvalidHeader,
                "image dimensions must be at least 64x64, got " +
                    std::to_string(h.width) + "x" + std::to_string(h.height));
  }
  if (static_cast<std::uint8_t>(h.variant) > 2) {
    throw Error(ErrorCode::kInvalidHeader,
                "structure variant " +
                    std::to_string(static_cast<int>(h.variant)));
  }
}

// Ordering and ladder rules shared by validate() and parse(). `ids` are in
// stream order.
void check_layer_sequence(const std::vector<int>& ids) {
  int previous = 0;
  for (int id : ids) {
    if (id < 1 || id > 3) {
      throw Error(ErrorCode::kUnknownLayer, "layer id " + std::to_string(id));
    }
    if (id == previous) {
      throw Error(ErrorCode::kDuplicateLayer, layer_name(id) + " repeated");
    }
    if (id < previous) {
      throw Error(ErrorCode::kLayerOrder,
                  layer_name(id) + " after " + layer_name(previous));
    }
    if (id != previous + 1) {
      throw Error(ErrorCode::kLadderViolation,
                  layer_name(id) + " present without " + layer_name(id - 1));
    }
    previous = id;
  }
}

void check_record(const ContainerHeader& h, const LayerRecord& r) {
  if (r.layer == LayerId::kStructure && h.variant == StructureVariant::kNone) {
    throw Error(ErrorCode::kVariantMismatch,
                "structure layer present but header variant is none");
  }
  if (!is_registered_codec(r.layer, h.variant, r.codec_id)) {
    throw Error(ErrorCode::kUnregisteredCodec,
                "codec " + std::to_string(r.codec_id) + " for " +
                    std::string(to_string(r.layer)) + " layer");
  }
  if (r.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kLengthMismatch, "payload exceeds 32-bit length");
  }
}

}  // namespace

std::string_view to_string(LayerId id) {
  switch (id) {
    case LayerId::kSemantic: return "semantic";
    case LayerId::kStructure: return "structure";
    case LayerId::kTexture: return "texture";
  }
  return "unknown";
}

std::string_view to_string(StructureVariant v) {
  switch (v) {
    case StructureVariant::kNone: return "none";
    case StructureVariant::kEdge: return "edge";
    case StructureVariant::kPose: return "pose";
  }
  return "unknown";
}

bool is_registered_codec(LayerId layer, StructureVariant variant,
                         std::uint8_t codec_id) {
  switch (layer) {
    case LayerId::kSemantic:
      return codec_id == codec::kStored || codec_id == codec::kZstd;
    case LayerId::kStructure:
      if (variant == StructureVariant::kPose) {
        return codec_id == codec::kPoseZstd;
      }
      if (variant == StructureVariant::kEdge) {
        return codec_id == codec::kEdgeReference ||
               codec_id == codec::kEdgeExternal;
      }
      return false;
    case LayerId::kTexture:
      return codec_id == codec::kStored;
  }
  return false;
}

const LayerRecord* LayeredBitstream::find(LayerId id) const {
  for (const auto& r : layers) {
    if (r.layer == id) return &r;
  }
  return nullptr;
}

LayerRecord* LayeredBitstream::find(LayerId id) {
  for (auto& r : layers) {
    if (r.layer == id) return &r;
  }
  return nullptr;
}

int LayeredBitstream::depth() const {
  int d = 0;
  for (const auto& r : layers) d = std::max(d, static_cast<int>(r.layer));
  return d;
}

void validate(const LayeredBitstream& bs) {
  validate_header(bs.header);
  std::vector<int> ids;
  ids.reserve(bs.layers.size());
  for (const auto& r : bs.layers) ids.push_back(static_cast<int>(r.layer));
  check_layer_sequence(ids);
  for (const auto& r : bs.layers) check_record(bs.header, r);
}

Bytes serialize(const LayeredBitstream& bs) {
  validate(bs);
  std::size_t total = kHeaderSize;
  for (const auto& r : bs.layers) total += r.encoded_size();

  Bytes out(kMagic.begin(), kMagic.end());
  out.reserve(total);
  put_u8(out, bs.header.version);
  put_u16be(out, bs.header.width);
  put_u16be(out, bs.header.height);
  put_u8(out, static_cast<std::uint8_t>(bs.header.variant));
  for (const auto& r : bs.layers) {
    put_u8(out, static_cast<std::uint8_t>(r.layer));
    put_u8(out, r.codec_id);
    put_u32be(out, static_cast<std::uint32_t>(r.payload.size()));
    out.insert(out.end(), r.payload.begin(), r.payload.end());
  }
  return out;
}

LayeredBitstream parse(ByteView bytes) {
  if (bytes.size() < kMagic.size() ||
      !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    if (bytes.size() < kMagic.size() &&
        std::equal(bytes.begin(), bytes.end(), kMagic.begin())) {
      throw Error(ErrorCode::kTruncated, "input ends inside the magic");
    }
    throw Error(ErrorCode::kBadMagic, "expected \"LCMC\"");
  }
  if (bytes.size() < kHeaderSize) {
    throw Error(ErrorCode::kTruncated, "input ends inside the header");
  }

  LayeredBitstream bs;
  bs.header.version = bytes[4];
  bs.header.width = get_u16be(bytes, 5);
  bs.header.height = get_u16be(bytes, 7);
  bs.header.variant = static_cast<StructureVariant>(bytes[9]);
  validate_header(bs.header);

  std::vector<int> ids;
  std::size_t pos = kHeaderSize;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kRecordOverhead) {
      throw Error(ErrorCode::kTruncated,
                  "input ends inside a record header at byte " +
                      std::to_string(pos));
    }
    const int id = bytes[pos];
    ids.push_back(id);
    check_layer_sequence(ids);

    LayerRecord r;
    r.layer = static_cast<LayerId>(id);
    r.codec_id = bytes[pos + 1];
    const std::uint32_t length = get_u32be(bytes, pos + 2);
    pos += kRecordOverhead;
    if (bytes.size() - pos < length) {
      throw Error(ErrorCode::kTruncated,
                  std::string(to_string(r.layer)) + " payload declares " +
                      std::to_string(length) + " bytes, " +
                      std::to_string(bytes.size() - pos) + " available");
    }
    r.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos + length));
    pos += length;
    check_record(bs.header, r);
    bs.layers.push_back(std::move(r));
  }
  return bs;
}

Bytes truncate_to_layer(ByteView bytes, int k) {
  if (k < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "layer bound must be >= 1, got " + std::to_string(k));
  }
  const LayeredBitstream bs = parse(bytes);
  std::size_t end = kHeaderSize;
  for (const auto& r : bs.layers) {
    if (static_cast<int>(r.layer) > k) break;
    end += r.encoded_size();
  }
  return Bytes(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(end));
}

double bits_per_pixel(std::size_t byte_count, const ContainerHeader& header) {
  return static_cast<double>(byte_count) * 8.0 /
         (static_cast<double>(header.width) * static_cast<double>(header.height));
}

double bits_per_pixel(ByteView bytes) {
  const LayeredBitstream bs = parse(bytes);
  return bits_per_pixel(bytes.size(), bs.header);
}

}  // namespace lcmc
