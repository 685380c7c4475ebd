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

#include "lcmc/structure_codec.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <unistd.h>

#include "lcmc/container.hpp"
#include "lcmc/error.hpp"

namespace lcmc {
namespace {

std::size_t bitmap_bytes(std::size_t keypoints) { return (keypoints + 7) / 8; }

void validate_person(const PosePerson& person, std::size_t index) {
  const std::size_t expected = keypoint_count(person.schema);
  if (person.keypoints.size() != expected) {
    throw Error(ErrorCode::kInvariantViolation,
                "person " + std::to_string(index) + " has " +
                    std::to_string(person.keypoints.size()) +
                    " keypoints, schema needs " + std::to_string(expected));
  }
  if (person.present_count() == 0) {
    throw Error(ErrorCode::kInvariantViolation,
                "person " + std::to_string(index) + " has no present keypoint");
  }
  for (const auto& kp : person.keypoints) {
    if (kp.present && (kp.qx > kCoordSteps || kp.qy > kCoordSteps)) {
      throw Error(ErrorCode::kInvariantViolation,
                  "person " + std::to_string(index) +
                      " has a coordinate above 100");
    }
  }
}

std::string substitute(std::string command, const std::string& key,
                       const std::string& value) {
  for (std::size_t pos = command.find(key); pos != std::string::npos;
       pos = command.find(key, pos + value.size())) {
    command.replace(pos, key.size(), value);
  }
  return command;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("lcmc-edge-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const char* name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& p, ByteView data) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
}

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void run_command(const std::string& command) {
  const int rc = std::system(command.c_str());
  if (rc != 0) {
    throw Error(ErrorCode::kExternalUnavailable,
                "external edge codec command failed (status " +
                    std::to_string(rc) + "): " + command);
  }
}

}  // namespace

std::size_t keypoint_count(PoseSchema schema) {
  switch (schema) {
    case PoseSchema::kBody18Face70: return kBodyKeypoints + kFaceKeypoints;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown pose schema " + std::to_string(static_cast<int>(schema)));
}

std::uint8_t quantize_coord(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "coordinate must be within [0, 1], got " + std::to_string(x));
  }
  return static_cast<std::uint8_t>(std::round(x * kCoordSteps));
}

PosePerson PosePerson::blank(PoseSchema schema) {
  PosePerson p;
  p.schema = schema;
  p.keypoints.resize(keypoint_count(schema));
  return p;
}

std::size_t PosePerson::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(keypoints.begin(), keypoints.end(),
                    [](const PoseKeypoint& k) { return k.present; }));
}

void validate_pose(const PoseMap& p) {
  if (p.persons.empty()) {
    throw Error(ErrorCode::kInvariantViolation, "pose map has no persons");
  }
  if (p.persons.size() > kMaxPersons) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(p.persons.size()) + " persons, limit is 16");
  }
  for (std::size_t i = 0; i < p.persons.size(); ++i) {
    validate_person(p.persons[i], i);
  }
}

Bytes pose_raw_bytes(const PoseMap& p) {
  validate_pose(p);
  Bytes raw;
  put_u8(raw, static_cast<std::uint8_t>(p.persons.size()));
  for (const auto& person : p.persons) {
    put_u8(raw, static_cast<std::uint8_t>(person.schema));
    const std::size_t n = person.keypoints.size();
    const std::size_t bitmap_at = raw.size();
    raw.resize(raw.size() + bitmap_bytes(n), 0);
    for (std::size_t k = 0; k < n; ++k) {
      if (person.keypoints[k].present) {
        raw[bitmap_at + k / 8] |= static_cast<std::uint8_t>(0x80u >> (k % 8));
      }
    }
    for (const auto& kp : person.keypoints) {
      if (!kp.present) continue;
      put_u8(raw, kp.qx);
      put_u8(raw, kp.qy);
    }
  }
  return raw;
}

PoseMap pose_from_raw_bytes(ByteView raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kLengthMismatch, "empty pose payload");
  }
  const std::size_t persons = raw[0];
  if (persons == 0 || persons > kMaxPersons) {
    throw Error(ErrorCode::kInvariantViolation,
                "pose payload declares " + std::to_string(persons) + " persons");
  }
  PoseMap map;
  std::size_t pos = 1;
  auto need = [&](std::size_t n, std::size_t person) {
    if (raw.size() - pos < n) {
      throw Error(ErrorCode::kLengthMismatch,
                  "pose payload ends inside person " + std::to_string(person) +
                      " of " + std::to_string(persons));
    }
  };
  for (std::size_t i = 0; i < persons; ++i) {
    need(1, i);
    const auto schema = static_cast<PoseSchema>(raw[pos++]);
    PosePerson person = PosePerson::blank(schema);
    const std::size_t n = person.keypoints.size();
    need(bitmap_bytes(n), i);
    const std::size_t bitmap_at = pos;
    pos += bitmap_bytes(n);
    for (std::size_t k = n; k < bitmap_bytes(n) * 8; ++k) {
      if (raw[bitmap_at + k / 8] & (0x80u >> (k % 8))) {
        throw Error(ErrorCode::kDecode, "nonzero presence bitmap padding");
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!(raw[bitmap_at + k / 8] & (0x80u >> (k % 8)))) continue;
      need(2, i);
      auto& kp = person.keypoints[k];
      kp.present = true;
      kp.qx = raw[pos++];
      kp.qy = raw[pos++];
    }
    validate_person(person, i);
    map.persons.push_back(std::move(person));
  }
  if (pos != raw.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(raw.size() - pos) +
                    " trailing bytes after the last person");
  }
  return map;
}

Bytes encode_pose(const PoseMap& p, int level) {
  return zstd::compress(pose_raw_bytes(p), level);
}

PoseMap decode_pose(ByteView payload) {
  return pose_from_raw_bytes(zstd::decompress(payload, 1 << 16));
}

// ---------------------------------------------------------------------------

BitGrid::BitGrid(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative grid dimensions");
  }
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t BitGrid::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

Bytes BitGrid::pack_rows() const {
  const std::size_t stride = packed_row_bytes(width_);
  Bytes out(stride * static_cast<std::size_t>(height_), 0);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (get(x, y)) {
        out[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x) / 8] |=
            static_cast<std::uint8_t>(0x80u >> (x % 8));
      }
    }
  }
  return out;
}

BitGrid BitGrid::unpack_rows(int width, int height, ByteView packed) {
  const std::size_t stride = packed_row_bytes(width);
  if (packed.size() != stride * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kLengthMismatch,
                "packed grid is " + std::to_string(packed.size()) +
                    " bytes, expected " +
                    std::to_string(stride * static_cast<std::size_t>(height)));
  }
  BitGrid grid(width, height);
  for (int y = 0; y < height; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * stride;
    for (std::size_t x = 0; x < stride * 8; ++x) {
      const bool bit = packed[row + x / 8] & (0x80u >> (x % 8));
      if (x >= static_cast<std::size_t>(width)) {
        if (bit) throw Error(ErrorCode::kDecode, "nonzero row padding bits");
        continue;
      }
      grid.set(static_cast<int>(x), y, bit);
    }
  }
  return grid;
}

void check_edge_dimensions(const EdgeMap& e, int image_width, int image_height) {
  if (e.downscale == 0 || image_width % e.downscale != 0 ||
      image_height % e.downscale != 0 ||
      e.width() != image_width / e.downscale ||
      e.height() != image_height / e.downscale) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(e.width()) + "x" + std::to_string(e.height()) +
                    " edge grid at downscale " + std::to_string(e.downscale) +
                    " does not cover " + std::to_string(image_width) + "x" +
                    std::to_string(image_height));
  }
}

CommandEdgeCodec::CommandEdgeCodec(std::string encode_command,
                                   std::string decode_command)
    : encode_command_(std::move(encode_command)),
      decode_command_(std::move(decode_command)) {}

Bytes CommandEdgeCodec::encode(const EdgeMap& e) {
  if (encode_command_.empty()) {
    throw Error(ErrorCode::kExternalUnavailable, "no external edge encoder");
  }
  TempDir dir;
  Bytes gray(static_cast<std::size_t>(e.width()) * static_cast<std::size_t>(e.height()));
  for (int y = 0; y < e.height(); ++y) {
    for (int x = 0; x < e.width(); ++x) {
      gray[static_cast<std::size_t>(y) * static_cast<std::size_t>(e.width()) +
           static_cast<std::size_t>(x)] = e.grid.get(x, y) ? 255 : 0;
    }
  }
  write_file(dir.file("grid.gray"), gray);
  std::string cmd = substitute(encode_command_, "{in}", dir.file("grid.gray").string());
  cmd = substitute(cmd, "{out}", dir.file("payload.bin").string());
  cmd = substitute(cmd, "{width}", std::to_string(e.width()));
  cmd = substitute(cmd, "{height}", std::to_string(e.height()));
  run_command(cmd);
  return read_file(dir.file("payload.bin"));
}

std::vector<std::uint8_t> CommandEdgeCodec::decode(ByteView payload, int width,
                                                   int height) {
  if (decode_command_.empty()) {
    throw Error(ErrorCode::kExternalUnavailable, "no external edge decoder");
  }
  TempDir dir;
  write_file(dir.file("payload.bin"), payload);
  std::string cmd = substitute(decode_command_, "{in}", dir.file("payload.bin").string());
  cmd = substitute(cmd, "{out}", dir.file("grid.gray").string());
  cmd = substitute(cmd, "{width}", std::to_string(width));
  cmd = substitute(cmd, "{height}", std::to_string(height));
  run_command(cmd);
  return read_file(dir.file("grid.gray"));
}

Bytes encode_edges(const EdgeMap& e, std::uint8_t codec_id,
                   ExternalEdgeCodec* external, int level) {
  if (e.downscale == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "edge downscale must be >= 1");
  }
  Bytes out = {e.downscale, e.threshold, 0, 0};
  Bytes body;
  if (codec_id == codec::kEdgeReference) {
    body = zstd::compress(e.grid.pack_rows(), level);
  } else if (codec_id == codec::kEdgeExternal) {
    if (external == nullptr) {
      throw Error(ErrorCode::kExternalUnavailable,
                  "edge codec 2 needs an external encoder");
    }
    body = external->encode(e);
  } else {
    throw Error(ErrorCode::kUnregisteredCodec,
                "edge codec " + std::to_string(codec_id));
  }
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

EdgeMap decode_edges(ByteView payload, std::uint8_t codec_id, int image_width,
                     int image_height, ExternalEdgeCodec* external) {
  if (payload.size() < kEdgeParamBlock) {
    throw Error(ErrorCode::kLengthMismatch,
                "edge payload shorter than its parameter block");
  }
  EdgeMap e;
  e.downscale = payload[0];
  e.threshold = payload[1];
  if (payload[2] != 0 || payload[3] != 0) {
    throw Error(ErrorCode::kDecode, "reserved edge parameter bytes are set");
  }
  if (e.downscale == 0 || image_width % e.downscale != 0 ||
      image_height % e.downscale != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "edge downscale " + std::to_string(e.downscale) +
                    " does not divide the image dimensions");
  }
  const int w = image_width / e.downscale;
  const int h = image_height / e.downscale;
  const ByteView body = payload.subspan(kEdgeParamBlock);

  if (codec_id == codec::kEdgeReference) {
    const Bytes packed = zstd::decompress(
        body, BitGrid::packed_row_bytes(w) * static_cast<std::size_t>(h));
    e.grid = BitGrid::unpack_rows(w, h, packed);
    return e;
  }
  if (codec_id == codec::kEdgeExternal) {
    if (external == nullptr) {
      throw Error(ErrorCode::kExternalUnavailable,
                  "edge codec 2 needs an external decoder");
    }
    const std::vector<std::uint8_t> gray = external->decode(body, w, h);
    if (gray.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
      throw Error(ErrorCode::kLengthMismatch,
                  "external decoder returned " + std::to_string(gray.size()) +
                      " samples for a " + std::to_string(w) + "x" +
                      std::to_string(h) + " grid");
    }
    e.grid = BitGrid(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        e.grid.set(x, y,
                   gray[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                        static_cast<std::size_t>(x)] >= e.threshold);
      }
    }
    return e;
  }
  throw Error(ErrorCode::kUnregisteredCodec,
              "edge codec " + std::to_string(codec_id));
}

EdgeMap detect_edges_fallback(const ImageBuffer& img, std::uint8_t threshold) {
  const int w = img.width();
  const int h = img.height();
  if (w == 0 || h == 0 || w % 2 != 0 || h % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge detection needs even dimensions, got " +
                    std::to_string(w) + "x" + std::to_string(h));
  }
  std::vector<int> luma(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb c = img.at(x, y);
      luma[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
           static_cast<std::size_t>(x)] = (299 * c.r + 587 * c.g + 114 * c.b + 500) / 1000;
    }
  }
  auto l = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return luma[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                static_cast<std::size_t>(x)];
  };
  // |g| / 4 >= t  <=>  gx^2 + gy^2 >= (4t)^2, kept in integers.
  const long long limit = 16LL * threshold * threshold;

  EdgeMap e;
  e.downscale = 2;
  e.threshold = threshold;
  e.grid = BitGrid(w / 2, h / 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const long long gx = (l(x + 1, y - 1) + 2 * l(x + 1, y) + l(x + 1, y + 1)) -
                           (l(x - 1, y - 1) + 2 * l(x - 1, y) + l(x - 1, y + 1));
      const long long gy = (l(x - 1, y + 1) + 2 * l(x, y + 1) + l(x + 1, y + 1)) -
                           (l(x - 1, y - 1) + 2 * l(x, y - 1) + l(x + 1, y - 1));
      if (gx * gx + gy * gy >= limit) e.grid.set(x / 2, y / 2, true);
    }
  }
  return e;
}

}  // namespace lcmc
