// Copyright 2026 The MaskForge Authors
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

#include "maskforge/image_io.h"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace maskforge {
namespace {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kNotFound, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_png(std::span<const std::uint8_t> bytes) {
  static constexpr std::array<std::uint8_t, 8> kSig = {0x89, 'P', 'N', 'G',
                                                       '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= kSig.size() &&
         std::equal(kSig.begin(), kSig.end(), bytes.begin());
}

// Decodes into the requested simplified-API format (gray or rgb).
std::vector<std::uint8_t> decode_png(std::span<const std::uint8_t> bytes,
                                     png_uint_32 format, int& width,
                                     int& height, const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kDecode,
                "cannot decode PNG " + name + ": " + image.message);
  }
  image.format = format;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw Error(ErrorCode::kDecode, "zero-dimension image " + name);
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kDecode, "cannot decode PNG " + name + ": " + msg);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return pixels;
}

void encode_png(const std::uint8_t* pixels, int width, int height,
                png_uint_32 format, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels, 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kIo, "cannot write " + path.string() + ": " + msg);
  }
}

// Minimal binary PGM (P5) reader; maxval up to 65535.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes,
                     const std::string& name) {
  std::size_t pos = 2;
  auto next_token = [&]() -> long {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    long value = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1'000'000) break;
      ++pos;
      any = true;
    }
    if (!any) throw Error(ErrorCode::kDecode, "malformed PGM header in " + name);
    return value;
  };
  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  ++pos;  // single whitespace before the raster
  if (w <= 0 || h <= 0) throw Error(ErrorCode::kDecode, "zero-dimension image " + name);
  if (maxval <= 0 || maxval > 65535) {
    throw Error(ErrorCode::kDecode, "unsupported PGM maxval in " + name);
  }
  const std::size_t bpp = maxval > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(w) * h;
  if (bytes.size() < pos + count * bpp) {
    throw Error(ErrorCode::kDecode, "truncated PGM raster in " + name);
  }
  GrayImage out{static_cast<int>(w), static_cast<int>(h),
                std::vector<std::uint8_t>(count)};
  for (std::size_t i = 0; i < count; ++i) {
    long v = bpp == 1 ? bytes[pos + i]
                      : (bytes[pos + 2 * i] << 8) | bytes[pos + 2 * i + 1];
    out.pixels[i] = static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  }
  return out;
}

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (is_png(bytes)) {
    GrayImage out;
    out.pixels = decode_png(bytes, PNG_FORMAT_GRAY, out.width, out.height,
                            path.string());
    return out;
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
    return decode_pgm(bytes, path.string());
  }
  throw Error(ErrorCode::kDecode, "unrecognized image format: " + path.string());
}

void save_gray(const GrayImage& image, const std::filesystem::path& path) {
  encode_png(image.pixels.data(), image.width, image.height, PNG_FORMAT_GRAY,
             path);
}

RgbImage load_rgb(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (!is_png(bytes)) {
    throw Error(ErrorCode::kDecode, "not a PNG file: " + path.string());
  }
  RgbImage out;
  out.pixels =
      decode_png(bytes, PNG_FORMAT_RGB, out.width, out.height, path.string());
  return out;
}

void save_rgb(const RgbImage& image, const std::filesystem::path& path) {
  encode_png(image.pixels.data(), image.width, image.height, PNG_FORMAT_RGB,
             path);
}

GrayImage to_gray(const BinaryMask& mask) {
  GrayImage out{mask.width(), mask.height(),
                std::vector<std::uint8_t>(mask.size())};
  auto data = mask.data();
  for (std::size_t i = 0; i < data.size(); ++i) out.pixels[i] = data[i] ? 255 : 0;
  return out;
}

BinaryMask binarize(const GrayImage& image) {
  std::vector<std::uint8_t> data(image.pixels.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = image.pixels[i] >= 128 ? 1 : 0;
  }
  return BinaryMask(image.width, image.height, std::move(data));
}

BinaryMask load_mask(const std::filesystem::path& path) {
  return binarize(load_gray(path));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  save_gray(to_gray(mask), path);
}

ProbMap load_prob_map(const std::filesystem::path& path) {
  const GrayImage image = load_gray(path);
  std::vector<double> values(image.pixels.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = image.pixels[i] / 255.0;
  }
  return ProbMap(image.width, image.height, std::move(values));
}

}  // namespace maskforge
