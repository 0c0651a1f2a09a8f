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

#ifndef MASKFORGE_RIGID_H_
#define MASKFORGE_RIGID_H_

#include <array>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "maskforge/mask.h"

namespace maskforge {

// Similarity transform plus an optional small projective tilt, applied about
// the foreground centroid. Rotation uses pixel axes (x right, y down), so a
// positive angle turns clockwise on screen.
struct RigidTransform {
  double rotation = 0.0;  // radians, |rotation| <= pi
  double scale = 1.0;     // [0.25, 4]
  double dx = 0.0;        // pixels
  double dy = 0.0;
  double tilt_x = 0.0;    // per pixel, [-0.001, 0.001]
  double tilt_y = 0.0;

  bool is_affine() const noexcept { return tilt_x == 0.0 && tilt_y == 0.0; }
  friend bool operator==(const RigidTransform&, const RigidTransform&) = default;
};

// Row-major 3x3 matrix acting on homogeneous column vectors (x, y, 1).
using Mat3 = std::array<double, 9>;

Mat3 identity3();
Mat3 multiply(const Mat3& a, const Mat3& b);
Mat3 inverse(const Mat3& m);
Point2 apply(const Mat3& m, const Point2& p);

// Throws kNotInvertible for a zero or non-finite scale and kInvalidArgument
// when a parameter leaves its documented range.
void validate(const RigidTransform& t);

// H = T(center + d) * s R * P * T(-center).
Mat3 homography(const RigidTransform& t, const Point2& center);

// Inverts the mask, warps it by H(t) about its centroid with bilinear
// sampling, thresholds at 0.5 and inverts back. Out-of-frame regions are
// background. Throws kEmptyResult when nothing of the foreground remains in
// frame, kInvalidArgument when the mask has no background (its inversion
// would be empty) and kDegenerate when it has no foreground.
BinaryMask rigid_edit(const BinaryMask& mask, const RigidTransform& t);

// Inverse for affine transforms. Because the warp centre follows the
// foreground centroid, which moves by (dx, dy), the inverse is simply
// (-rotation, 1/scale, -dx, -dy). Throws kNotInvertible for tilted
// transforms, whose inverse is not representable in this parameterization.
RigidTransform invert_transform(const RigidTransform& t);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct RigidRanges {
  Interval rotation{-1.0471975511965976, 1.0471975511965976};
  Interval scale{0.6, 1.6};
  Interval dx{-4.0, 4.0};
  Interval dy{-4.0, 4.0};
  Interval tilt_x{-0.0005, 0.0005};
  Interval tilt_y{-0.0005, 0.0005};

  static RigidRanges Identity();
};

// Uniform per-component draw; deterministic for a fixed seed. Throws
// kInvalidArgument for empty intervals or ranges outside the type limits.
RigidTransform sample_rigid(std::uint64_t seed, const RigidRanges& ranges);

void to_json(nlohmann::json& j, const RigidTransform& t);
void from_json(const nlohmann::json& j, RigidTransform& t);
void to_json(nlohmann::json& j, const RigidRanges& r);
void from_json(const nlohmann::json& j, RigidRanges& r);

}  // namespace maskforge

#endif  // MASKFORGE_RIGID_H_
