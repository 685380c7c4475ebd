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

#ifndef LCMC_STRUCTURE_CODEC_HPP_
#define LCMC_STRUCTURE_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lcmc/bytes.hpp"
#include "lcmc/image.hpp"
#include "lcmc/zstd_frame.hpp"

namespace lcmc {

// ---------------------------------------------------------------------------
// Pose keypoints
// ---------------------------------------------------------------------------

/// COCO-18 body keypoints followed by 70 face landmarks.
enum class PoseSchema : std::uint8_t { kBody18Face70 = 0 };

inline constexpr std::size_t kBodyKeypoints = 18;
inline constexpr std::size_t kFaceKeypoints = 70;
inline constexpr std::size_t kMaxPersons = 16;
inline constexpr std::uint8_t kCoordSteps = 100;

/// Number of keypoints in a schema; throws kInvalidArgument for unknown ids.
std::size_t keypoint_count(PoseSchema schema);

/// Round-to-nearest of 100 * x, ties away from zero. x must lie in [0, 1].
std::uint8_t quantize_coord(double x);
inline double dequantize_coord(std::uint8_t q) { return q / 100.0; }

struct PoseKeypoint {
  bool present = false;
  std::uint8_t qx = 0;  // hundredths of image width
  std::uint8_t qy = 0;  // hundredths of image height

  bool operator==(const PoseKeypoint&) const = default;
};

struct PosePerson {
  PoseSchema schema = PoseSchema::kBody18Face70;
  std::vector<PoseKeypoint> keypoints;

  /// A person of `schema` with every keypoint absent.
  static PosePerson blank(PoseSchema schema = PoseSchema::kBody18Face70);

  std::size_t present_count() const;

  bool operator==(const PosePerson&) const = default;
};

struct PoseMap {
  std::vector<PosePerson> persons;

  bool operator==(const PoseMap&) const = default;
};

/// Checks per-person invariants and the 1..16 person range.
void validate_pose(const PoseMap& p);

/// Pre-compression layout: person count, then per person the schema id, the
/// keypoint presence bitmap (MSB first, 11 bytes for schema 0) and the
/// (qx, qy) pairs of present keypoints in schema order.
Bytes pose_raw_bytes(const PoseMap& p);
PoseMap pose_from_raw_bytes(ByteView raw);

Bytes encode_pose(const PoseMap& p, int level = zstd::kDefaultLevel);
PoseMap decode_pose(ByteView payload);

// ---------------------------------------------------------------------------
// Edge maps
// ---------------------------------------------------------------------------

/// Binary matrix, one byte per cell holding 0 or 1.
class BitGrid {
 public:
  BitGrid() = default;
  BitGrid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  bool get(int x, int y) const { return cells_[index(x, y)] != 0; }
  void set(int x, int y, bool v) { cells_[index(x, y)] = v ? 1 : 0; }
  std::size_t count() const;

  /// Row-major, MSB-first, each row padded to a whole byte.
  Bytes pack_rows() const;
  static BitGrid unpack_rows(int width, int height, ByteView packed);
  static std::size_t packed_row_bytes(int width) {
    return (static_cast<std::size_t>(width) + 7) / 8;
  }

  bool operator==(const BitGrid&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
};

inline constexpr std::uint8_t kDefaultEdgeDownscale = 2;
inline constexpr std::uint8_t kDefaultEdgeThreshold = 50;
inline constexpr std::size_t kEdgeParamBlock = 4;

struct EdgeMap {
  BitGrid grid;  // image dimensions divided by `downscale`
  std::uint8_t downscale = kDefaultEdgeDownscale;
  std::uint8_t threshold = kDefaultEdgeThreshold;

  int width() const { return grid.width(); }
  int height() const { return grid.height(); }

  bool operator==(const EdgeMap&) const = default;
};

/// Throws kDimensionMismatch unless `e` covers an image_width x image_height
/// image exactly at its downscale factor.
void check_edge_dimensions(const EdgeMap& e, int image_width, int image_height);

/// Hook for codec id 2: payloads produced and consumed by an outside tool.
class ExternalEdgeCodec {
 public:
  virtual ~ExternalEdgeCodec() = default;
  /// Returns the opaque payload for `e` (without the parameter block).
  virtual Bytes encode(const EdgeMap& e) = 0;
  /// Returns width * height 8-bit samples reconstructed from `payload`.
  virtual std::vector<std::uint8_t> decode(ByteView payload, int width,
                                           int height) = 0;
};

/// Runs shell command templates around temporary files. Placeholders:
/// {in}, {out}, {width}, {height}. The encoder reads raw 8-bit grayscale
/// (edge = 255) and writes the payload; the decoder does the reverse.
class CommandEdgeCodec : public ExternalEdgeCodec {
 public:
  CommandEdgeCodec(std::string encode_command, std::string decode_command);

  Bytes encode(const EdgeMap& e) override;
  std::vector<std::uint8_t> decode(ByteView payload, int width,
                                   int height) override;

 private:
  std::string encode_command_;
  std::string decode_command_;
};

/// Parameter block (downscale, threshold, 0, 0) followed by the codec body:
/// codec 1 is a zstd frame of BitGrid::pack_rows(), codec 2 is whatever
/// `external` produces.
Bytes encode_edges(const EdgeMap& e, std::uint8_t codec_id,
                   ExternalEdgeCodec* external = nullptr,
                   int level = zstd::kDefaultLevel);

EdgeMap decode_edges(ByteView payload, std::uint8_t codec_id, int image_width,
                     int image_height, ExternalEdgeCodec* external = nullptr);

/// Model-free edge extractor: Sobel gradient magnitude of BT.601 luma
/// (normalized by 4 so a full black/white step reads 255), 2x2 max-pooled,
/// thresholded at >= `threshold`.
EdgeMap detect_edges_fallback(const ImageBuffer& img,
                              std::uint8_t threshold = kDefaultEdgeThreshold);

}  // namespace lcmc

#endif  // LCMC_STRUCTURE_CODEC_HPP_
