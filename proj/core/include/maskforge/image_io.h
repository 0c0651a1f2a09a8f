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

#ifndef MASKFORGE_IMAGE_IO_H_
#define MASKFORGE_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "maskforge/mask.h"

namespace maskforge {

// 8-bit single-channel raster.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

// 8-bit interleaved RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // size = 3 * width * height

  std::uint8_t channel(int x, int y, int c) const {
    return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Decodes PNG (any color type, converted to gray) or binary PGM (P5).
GrayImage load_gray(const std::filesystem::path& path);
void save_gray(const GrayImage& image, const std::filesystem::path& path);

RgbImage load_rgb(const std::filesystem::path& path);
void save_rgb(const RgbImage& image, const std::filesystem::path& path);

// Pixels >= 128 become foreground.
BinaryMask load_mask(const std::filesystem::path& path);
// Writes an 8-bit grayscale PNG with 1 -> 255 and 0 -> 0.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

// 8-bit prediction map normalized by 1/255.
ProbMap load_prob_map(const std::filesystem::path& path);

GrayImage to_gray(const BinaryMask& mask);
BinaryMask binarize(const GrayImage& image);

}  // namespace maskforge

#endif  // MASKFORGE_IMAGE_IO_H_
