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

#include "maskforge/stub_backend.h"

#include "maskforge/error.h"
#include "maskforge/sampling.h"

namespace maskforge {
namespace {

// Hash noise in [0, 1) for one pixel and channel, smoothed over 4x4 cells so
// the texture is not pure static.
double texture(std::uint64_t seed, int x, int y, int c) {
  const auto cell = derive_seed(seed, {static_cast<std::uint64_t>(x / 4),
                                       static_cast<std::uint64_t>(y / 4),
                                       static_cast<std::uint64_t>(c)});
  const auto fine = derive_seed(seed ^ 0x5bd1e995u,
                                {static_cast<std::uint64_t>(x),
                                 static_cast<std::uint64_t>(y),
                                 static_cast<std::uint64_t>(c)});
  const double a = static_cast<double>(cell >> 11) * 0x1.0p-53;
  const double b = static_cast<double>(fine >> 11) * 0x1.0p-53;
  return 0.7 * a + 0.3 * b;
}

std::uint8_t lerp8(int lo, int span, double t) {
  return static_cast<std::uint8_t>(lo + static_cast<int>(t * span));
}

}  // namespace

RgbImage stub_generate(const BinaryMask& mask, std::uint64_t seed) {
  RgbImage img;
  img.width = mask.width();
  img.height = mask.height();
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      std::uint8_t* px = &img.pixels[(static_cast<std::size_t>(y) * img.width + x) * 3];
      if (mask.at(x, y)) {
        px[0] = lerp8(kStubForegroundRedMin, 95, texture(seed, x, y, 0));
        px[1] = lerp8(110, 90, texture(seed, x, y, 1));
        px[2] = lerp8(50, 60, texture(seed, x, y, 2));
      } else {
        px[0] = lerp8(10, kStubBackgroundRedMax - 10, texture(seed + 1, x, y, 0));
        px[1] = lerp8(50, 80, texture(seed + 1, x, y, 1));
        px[2] = lerp8(100, 90, texture(seed + 1, x, y, 2));
      }
    }
  }
  return img;
}

BinaryMask recover_mask(const RgbImage& image) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
    throw Error(ErrorCode::kInvalidArgument, "malformed RGB image");
  }
  std::vector<std::uint8_t> data(static_cast<std::size_t>(image.width) * image.height);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = image.pixels[3 * i] >= 128;
  return BinaryMask(image.width, image.height, std::move(data));
}

}  // namespace maskforge
