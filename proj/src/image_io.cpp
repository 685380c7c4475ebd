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

#include "lcmc/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lcmc/error.hpp"

namespace lcmc::io {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

bool is_png(ByteView data) {
  return data.size() >= 8 && std::memcmp(data.data(), kPngSignature, 8) == 0;
}

ImageBuffer decode_png(ByteView data) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
    throw Error(ErrorCode::kIo, std::string("png: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::kIo, std::string("png: ") + image.message);
  }
  return ImageBuffer(static_cast<int>(image.width), static_cast<int>(image.height),
                     std::move(pixels));
}

// Minimal netpbm header reader: magic, then `fields` whitespace-separated
// integers with '#' comments, then one whitespace byte.
class PnmReader {
 public:
  explicit PnmReader(ByteView data) : data_(data) {}

  int next_int() {
    skip_space();
    if (pos_ >= data_.size() || !std::isdigit(data_[pos_])) {
      throw Error(ErrorCode::kIo, "malformed netpbm header");
    }
    long v = 0;
    while (pos_ < data_.size() && std::isdigit(data_[pos_])) {
      v = v * 10 + (data_[pos_++] - '0');
      if (v > 1 << 20) throw Error(ErrorCode::kIo, "netpbm value too large");
    }
    return static_cast<int>(v);
  }

  int next_bit() {
    skip_space();
    if (pos_ >= data_.size() || (data_[pos_] != '0' && data_[pos_] != '1')) {
      throw Error(ErrorCode::kIo, "malformed plain PBM raster");
    }
    return data_[pos_++] - '0';
  }

  ByteView raster() {
    if (pos_ >= data_.size() || !std::isspace(data_[pos_])) {
      throw Error(ErrorCode::kIo, "malformed netpbm header");
    }
    return data_.subspan(pos_ + 1);
  }

 private:
  void skip_space() {
    while (pos_ < data_.size()) {
      if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(data_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  ByteView data_;
  std::size_t pos_ = 2;
};

ImageBuffer decode_ppm(ByteView data) {
  PnmReader reader(data);
  const int w = reader.next_int();
  const int h = reader.next_int();
  const int maxval = reader.next_int();
  if (maxval != 255) throw Error(ErrorCode::kIo, "only 8-bit PPM is supported");
  const ByteView raster = reader.raster();
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
  if (raster.size() < need) throw Error(ErrorCode::kIo, "PPM raster is truncated");
  return ImageBuffer(w, h, std::vector<std::uint8_t>(raster.begin(), raster.begin() + need));
}

}  // namespace

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

ImageBuffer decode_image(ByteView data) {
  if (is_png(data)) return decode_png(data);
  if (data.size() >= 2 && data[0] == 'P' && data[1] == '6') return decode_ppm(data);
  throw Error(ErrorCode::kIo, "unrecognized image format (expected PNG or P6 PPM)");
}

ImageBuffer read_image(const std::filesystem::path& path) {
  return decode_image(read_file(path));
}

Bytes encode_png(const ImageBuffer& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, img.pixels().data(), 0,
                                       nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png: ") + image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0,
                                 img.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png: ") + image.message);
  }
  out.resize(size);
  return out;
}

Bytes encode_ppm(const ImageBuffer& img) {
  const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

void write_image(const std::filesystem::path& path, const ImageBuffer& img) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  write_file(path, ext == ".ppm" ? encode_ppm(img) : encode_png(img));
}

BitGrid read_bitmap(const std::filesystem::path& path) {
  const Bytes data = read_file(path);
  if (data.size() >= 2 && data[0] == 'P' && (data[1] == '1' || data[1] == '4')) {
    PnmReader reader(data);
    const int w = reader.next_int();
    const int h = reader.next_int();
    BitGrid grid(w, h);
    if (data[1] == '1') {
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) grid.set(x, y, reader.next_bit() == 1);
      }
      return grid;
    }
    const ByteView raster = reader.raster();
    const std::size_t stride = BitGrid::packed_row_bytes(w);
    if (raster.size() < stride * static_cast<std::size_t>(h)) {
      throw Error(ErrorCode::kIo, "PBM raster is truncated");
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        grid.set(x, y, raster[static_cast<std::size_t>(y) * stride +
                              static_cast<std::size_t>(x) / 8] &
                           (0x80u >> (x % 8)));
      }
    }
    return grid;
  }
  const ImageBuffer img = decode_image(data);
  BitGrid grid(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      grid.set(x, y, !(img.at(x, y) == Rgb{}));
    }
  }
  return grid;
}

Bytes encode_pbm(const BitGrid& grid) {
  const std::string header = "P4\n" + std::to_string(grid.width()) + " " +
                             std::to_string(grid.height()) + "\n";
  Bytes out(header.begin(), header.end());
  const Bytes packed = grid.pack_rows();
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

}  // namespace lcmc::io
