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

#ifndef LCMC_CONTAINER_HPP_
#define LCMC_CONTAINER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lcmc/bytes.hpp"

namespace lcmc {

/// Wire layout (all multi-byte integers big-endian):
///
///   header  : "LCMC" | version u8 | width u16 | height u16 | variant u8
///   record* : layer_id u8 | codec_id u8 | payload_length u32 | payload
///
/// Records carry their own length and there is no record count, so every
/// prefix that ends on a record boundary is itself a valid container.
inline constexpr std::array<std::uint8_t, 4> kMagic = {'L', 'C', 'M', 'C'};
inline constexpr std::uint8_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 10;
inline constexpr std::size_t kRecordOverhead = 6;
inline constexpr std::uint16_t kMinDimension = 64;

enum class LayerId : std::uint8_t { kSemantic = 1, kStructure = 2, kTexture = 3 };
enum class StructureVariant : std::uint8_t { kNone = 0, kEdge = 1, kPose = 2 };

std::string_view to_string(LayerId id);
std::string_view to_string(StructureVariant v);

/// Registered codec ids per layer.
namespace codec {
inline constexpr std::uint8_t kStored = 0;         // layers 1 and 3
inline constexpr std::uint8_t kZstd = 1;           // layer 1
inline constexpr std::uint8_t kPoseZstd = 1;       // layer 2, pose variant
inline constexpr std::uint8_t kEdgeReference = 1;  // layer 2, edge variant
inline constexpr std::uint8_t kEdgeExternal = 2;   // layer 2, edge variant
}  // namespace codec

/// True when `codec_id` is registered for `layer` under `variant`.
bool is_registered_codec(LayerId layer, StructureVariant variant,
                         std::uint8_t codec_id);

struct ContainerHeader {
  std::uint8_t version = kFormatVersion;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  StructureVariant variant = StructureVariant::kNone;

  bool operator==(const ContainerHeader&) const = default;
};

struct LayerRecord {
  LayerId layer = LayerId::kSemantic;
  std::uint8_t codec_id = 0;
  Bytes payload;

  std::size_t encoded_size() const { return kRecordOverhead + payload.size(); }

  bool operator==(const LayerRecord&) const = default;
};

struct LayeredBitstream {
  ContainerHeader header;
  std::vector<LayerRecord> layers;

  const LayerRecord* find(LayerId id) const;
  LayerRecord* find(LayerId id);
  bool has(LayerId id) const { return find(id) != nullptr; }

  /// Highest layer id present, 0 for a header-only container.
  int depth() const;

  bool operator==(const LayeredBitstream&) const = default;
};

/// Throws Error naming the first violated rule (header fields, ordering,
/// ladder, variant/structure agreement, codec registration, length cap).
void validate(const LayeredBitstream& bs);

Bytes serialize(const LayeredBitstream& bs);
LayeredBitstream parse(ByteView bytes);

/// Shortest prefix of `bytes` holding exactly the layers with id <= k.
/// Any k >= 3 keeps every layer. Throws kInvalidArgument for k < 1.
Bytes truncate_to_layer(ByteView bytes, int k);

/// Total container bits (header and framing included) per image pixel.
double bits_per_pixel(ByteView bytes);
double bits_per_pixel(std::size_t byte_count, const ContainerHeader& header);

}  // namespace lcmc

#endif  // LCMC_CONTAINER_HPP_
