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

#ifndef MASKFORGE_STUB_BACKEND_H_
#define MASKFORGE_STUB_BACKEND_H_

#include <cstdint>

#include "maskforge/image_io.h"
#include "maskforge/mask.h"

namespace maskforge {

// Procedural stand-in for an image generator. Foreground pixels get a warm
// texture whose red channel is always >= kStubForegroundRedMin, background
// pixels a cool texture with red < kStubBackgroundRedMax.
inline constexpr int kStubForegroundRedMin = 160;
inline constexpr int kStubBackgroundRedMax = 100;

RgbImage stub_generate(const BinaryMask& mask, std::uint64_t seed);

// Thresholds the red channel at 128.
BinaryMask recover_mask(const RgbImage& image);

}  // namespace maskforge

#endif  // MASKFORGE_STUB_BACKEND_H_
