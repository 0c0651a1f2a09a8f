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

#ifndef MASKFORGE_CANNY_H_
#define MASKFORGE_CANNY_H_

#include "maskforge/mask.h"

namespace maskforge {

// Binary edge indicators with the dimensions of the source mask.
struct EdgeMap {
  BinaryMask pixels;

  int width() const noexcept { return pixels.width(); }
  int height() const noexcept { return pixels.height(); }
  bool at(int x, int y) const { return pixels.at(x, y) != 0; }
  std::size_t edge_count() const noexcept { return pixels.foreground_count(); }
};

// Thresholds are fractions of the image's maximum gradient magnitude.
struct CannyParams {
  double sigma = 1.0;
  double low = 0.1;
  double high = 0.3;
};

// Gaussian blur, Sobel gradients, non-maximum suppression and hysteresis on
// the {0, 255}-scaled mask. Throws kInvalidArgument unless 0 <= low <= high.
EdgeMap canny(const BinaryMask& mask, const CannyParams& params = {});
EdgeMap canny(const BinaryMask& mask, double low, double high);

}  // namespace maskforge

#endif  // MASKFORGE_CANNY_H_
