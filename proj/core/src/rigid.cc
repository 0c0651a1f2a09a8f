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

#include "maskforge/rigid.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "maskforge/sampling.h"

namespace maskforge {

Mat3 identity3() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += a[r * 3 + k] * b[k * 3 + c];
      out[r * 3 + c] = acc;
    }
  }
  return out;
}

Mat3 inverse(const Mat3& m) {
  const double a = m[0], b = m[1], c = m[2];
  const double d = m[3], e = m[4], f = m[5];
  const double g = m[6], h = m[7], i = m[8];
  const double A = e * i - f * h, B = -(d * i - f * g), C = d * h - e * g;
  const double det = a * A + b * B + c * C;
  if (det == 0.0 || !std::isfinite(det)) {
    throw Error(ErrorCode::kNotInvertible, "singular 3x3 matrix");
  }
  const double inv = 1.0 / det;
  return {A * inv, -(b * i - c * h) * inv, (b * f - c * e) * inv,
          B * inv, (a * i - c * g) * inv,  -(a * f - c * d) * inv,
          C * inv, -(a * h - b * g) * inv, (a * e - b * d) * inv};
}

Point2 apply(const Mat3& m, const Point2& p) {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w,
          (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

namespace {

void check_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " out of range: " + std::to_string(v));
  }
}

// Exact values at multiples of pi/2 so quarter turns permute pixel centres.
void cos_sin(double angle, double& c, double& s) {
  const double quarter = angle / (std::numbers::pi / 2.0);
  const double k = std::round(quarter);
  if (std::abs(quarter - k) < 1e-12) {
    static constexpr double kCos[4] = {1, 0, -1, 0};
    static constexpr double kSin[4] = {0, 1, 0, -1};
    const int idx = ((static_cast<int>(k) % 4) + 4) % 4;
    c = kCos[idx];
    s = kSin[idx];
    return;
  }
  c = std::cos(angle);
  s = std::sin(angle);
}

}  // namespace

void validate(const RigidTransform& t) {
  if (!std::isfinite(t.scale) || t.scale == 0.0) {
    throw Error(ErrorCode::kNotInvertible, "transform scale must be non-zero");
  }
  check_range(t.scale, 0.25, 4.0, "scale");
  check_range(t.rotation, -std::numbers::pi, std::numbers::pi, "rotation");
  check_range(t.tilt_x, -0.001, 0.001, "tilt_x");
  check_range(t.tilt_y, -0.001, 0.001, "tilt_y");
  if (!std::isfinite(t.dx) || !std::isfinite(t.dy)) {
    throw Error(ErrorCode::kInvalidArgument, "translation must be finite");
  }
}

Mat3 homography(const RigidTransform& t, const Point2& center) {
  double c = 0.0, s = 0.0;
  cos_sin(t.rotation, c, s);
  const Mat3 to_origin = {1, 0, -center.x, 0, 1, -center.y, 0, 0, 1};
  const Mat3 tilt = {1, 0, 0, 0, 1, 0, t.tilt_x, t.tilt_y, 1};
  const Mat3 linear = {t.scale * c, -t.scale * s, 0, t.scale * s, t.scale * c,
                       0, 0, 0, 1};
  const Mat3 back = {1, 0, center.x + t.dx, 0, 1, center.y + t.dy, 0, 0, 1};
  return multiply(back, multiply(linear, multiply(tilt, to_origin)));
}

BinaryMask rigid_edit(const BinaryMask& mask, const RigidTransform& t) {
  validate(t);
  const std::size_t fg = mask.foreground_count();
  if (fg == mask.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask has no background; its inversion is empty");
  }
  const Point2 center = centroid(mask);  // throws on empty foreground
  const BinaryMask inverted = invert(mask);
  const Mat3 back = inverse(homography(t, center));

  const int w = mask.width();
  const int h = mask.height();
  // Outside the frame the inverted field is 1 (original background).
  auto field = [&](int x, int y) -> double {
    if (x < 0 || y < 0 || x >= w || y >= h) return 1.0;
    return inverted.at(x, y);
  };
  std::vector<std::uint8_t> out(mask.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double hw = back[6] * x + back[7] * y + back[8];
      double value = 1.0;
      if (hw > 0.0) {
        const double sx = (back[0] * x + back[1] * y + back[2]) / hw;
        const double sy = (back[3] * x + back[4] * y + back[5]) / hw;
        if (std::isfinite(sx) && std::isfinite(sy) && sx > -2.0 &&
            sy > -2.0 && sx < w + 1.0 && sy < h + 1.0) {
          const int x0 = static_cast<int>(std::floor(sx));
          const int y0 = static_cast<int>(std::floor(sy));
          const double fx = sx - x0;
          const double fy = sy - y0;
          value = (1 - fx) * (1 - fy) * field(x0, y0) +
                  fx * (1 - fy) * field(x0 + 1, y0) +
                  (1 - fx) * fy * field(x0, y0 + 1) +
                  fx * fy * field(x0 + 1, y0 + 1);
        }
      }
      const bool inverted_on = value > 0.5;
      out[static_cast<std::size_t>(y) * w + x] = inverted_on ? 0 : 1;
    }
  }
  BinaryMask result(w, h, std::move(out));
  if (result.foreground_count() == 0) {
    throw Error(ErrorCode::kEmptyResult,
                "transform moves the entire foreground out of frame");
  }
  return result;
}

RigidTransform invert_transform(const RigidTransform& t) {
  validate(t);
  if (!t.is_affine()) {
    throw Error(ErrorCode::kNotInvertible,
                "inverse of a tilted transform is not representable");
  }
  RigidTransform inv;
  inv.rotation = -t.rotation;
  inv.scale = 1.0 / t.scale;
  inv.dx = -t.dx;
  inv.dy = -t.dy;
  return inv;
}

RigidRanges RigidRanges::Identity() {
  RigidRanges r;
  r.rotation = {0, 0};
  r.scale = {1, 1};
  r.dx = {0, 0};
  r.dy = {0, 0};
  r.tilt_x = {0, 0};
  r.tilt_y = {0, 0};
  return r;
}

RigidTransform sample_rigid(std::uint64_t seed, const RigidRanges& ranges) {
  auto check = [](const Interval& iv, double lo, double hi, const char* name) {
    if (!(iv.lo <= iv.hi)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("empty range for ") + name);
    }
    check_range(iv.lo, lo, hi, name);
    check_range(iv.hi, lo, hi, name);
  };
  constexpr double kHuge = 1e6;
  check(ranges.rotation, -std::numbers::pi, std::numbers::pi, "rotation");
  check(ranges.scale, 0.25, 4.0, "scale");
  check(ranges.dx, -kHuge, kHuge, "dx");
  check(ranges.dy, -kHuge, kHuge, "dy");
  check(ranges.tilt_x, -0.001, 0.001, "tilt_x");
  check(ranges.tilt_y, -0.001, 0.001, "tilt_y");

  std::mt19937_64 rng(seed);
  RigidTransform t;
  t.rotation = uniform_in(rng, ranges.rotation.lo, ranges.rotation.hi);
  t.scale = uniform_in(rng, ranges.scale.lo, ranges.scale.hi);
  t.dx = uniform_in(rng, ranges.dx.lo, ranges.dx.hi);
  t.dy = uniform_in(rng, ranges.dy.lo, ranges.dy.hi);
  t.tilt_x = uniform_in(rng, ranges.tilt_x.lo, ranges.tilt_x.hi);
  t.tilt_y = uniform_in(rng, ranges.tilt_y.lo, ranges.tilt_y.hi);
  return t;
}

void to_json(nlohmann::json& j, const RigidTransform& t) {
  j = {{"rotation", t.rotation}, {"scale", t.scale},
       {"translation", {t.dx, t.dy}}, {"tilt", {t.tilt_x, t.tilt_y}}};
}

void from_json(const nlohmann::json& j, RigidTransform& t) {
  t = RigidTransform{};
  t.rotation = j.value("rotation", 0.0);
  t.scale = j.value("scale", 1.0);
  if (j.contains("translation")) {
    t.dx = j.at("translation").at(0).get<double>();
    t.dy = j.at("translation").at(1).get<double>();
  }
  if (j.contains("tilt")) {
    t.tilt_x = j.at("tilt").at(0).get<double>();
    t.tilt_y = j.at("tilt").at(1).get<double>();
  }
}

namespace {
nlohmann::json interval_json(const Interval& iv) { return {iv.lo, iv.hi}; }
Interval interval_from(const nlohmann::json& j, const char* key,
                       const Interval& fallback) {
  if (!j.contains(key)) return fallback;
  return {j.at(key).at(0).get<double>(), j.at(key).at(1).get<double>()};
}
}  // namespace

void to_json(nlohmann::json& j, const RigidRanges& r) {
  j = {{"rotation", interval_json(r.rotation)}, {"scale", interval_json(r.scale)},
       {"dx", interval_json(r.dx)},             {"dy", interval_json(r.dy)},
       {"tilt_x", interval_json(r.tilt_x)},     {"tilt_y", interval_json(r.tilt_y)}};
}

void from_json(const nlohmann::json& j, RigidRanges& r) {
  const RigidRanges d;
  r.rotation = interval_from(j, "rotation", d.rotation);
  r.scale = interval_from(j, "scale", d.scale);
  r.dx = interval_from(j, "dx", d.dx);
  r.dy = interval_from(j, "dy", d.dy);
  r.tilt_x = interval_from(j, "tilt_x", d.tilt_x);
  r.tilt_y = interval_from(j, "tilt_y", d.tilt_y);
}

}  // namespace maskforge
