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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "maskforge/deformation.h"
#include "maskforge/error.h"
#include "oracles.h"

namespace maskforge {
namespace {

DeformationField uniform(double dx, double dy, double cap = 1e9) {
  DeformationField f(5, 5, cap);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) f.set_control(i, j, {dx, dy});
  }
  return f;
}

TEST(Deformation, ZeroFieldIsIdentity) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 10; ++i) {
    const auto m = oracle::random_blob(rng, 40, 56);
    EXPECT_EQ(apply_deformation(m, DeformationField{}), m);
  }
}

TEST(Deformation, UniformFieldMatchesShift) {
  const auto m = oracle::disk(64, 64, 30, 32, 14);
  const auto out = apply_deformation(m, uniform(3, 0));
  const auto expected = oracle::disk(64, 64, 33, 32, 14);
  EXPECT_GE(iou(out, expected), 0.99);
  // Integer shifts are exact.
  EXPECT_EQ(out, expected);
}

TEST(Deformation, InterpolationReproducesControls) {
  DeformationField f(5, 5);
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) f.set_control(i, j, {u(rng), u(rng)});
  }
  // 65 px: controls sit on pixels 0, 16, 32, 48, 64.
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      const Point2 d = f.displacement_at(16.0 * i, 16.0 * j, 65, 65);
      EXPECT_NEAR(d.x, f.control(i, j).x, 1e-12);
      EXPECT_NEAR(d.y, f.control(i, j).y, 1e-12);
    }
  }
  // Midpoint between two controls on a row is their average.
  const Point2 mid = f.displacement_at(8, 0, 65, 65);
  EXPECT_NEAR(mid.x, 0.5 * (f.control(0, 0).x + f.control(1, 0).x), 1e-12);
}

TEST(Deformation, SmallRandomFieldsKeepAnnulusTopology) {
  const auto ring = oracle::annulus(64, 64, 31.5, 31.5, 22, 11);
  const auto before = topology(ring);
  ASSERT_EQ(before.holes, 1);
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    DeformationField f(5, 5, 2.0);
    std::vector<double> p(static_cast<std::size_t>(f.parameter_count()));
    for (auto& v : p) v = u(rng);
    f.set_parameters(p);
    EXPECT_LE(f.max_magnitude(), 2.0 + 1e-12);
    EXPECT_EQ(topology(apply_deformation(ring, f)).euler, before.euler) << trial;
  }
}

TEST(Deformation, CapClampsEveryControl) {
  DeformationField f(4, 3, 1.5);
  f.set_control(1, 1, {30, 40});
  const Point2 c = f.control(1, 1);
  EXPECT_NEAR(std::hypot(c.x, c.y), 1.5, 1e-12);
  EXPECT_NEAR(c.x / c.y, 0.75, 1e-12);  // direction kept
  std::vector<double> p(24, 100.0);
  f.set_parameters(p);
  EXPECT_NEAR(f.max_magnitude(), 1.5, 1e-12);
  EXPECT_NEAR(f.scaled(10).max_magnitude(), 1.5, 1e-12);
  EXPECT_NEAR(f.scaled(0.5).max_magnitude(), 0.75, 1e-12);
  EXPECT_DOUBLE_EQ(default_displacement_cap(64, 48), 0.15 * 48);
}

TEST(Deformation, Errors) {
  EXPECT_THROW(DeformationField(1, 5), Error);
  EXPECT_THROW(DeformationField(5, 5, -1.0), Error);
  DeformationField f(5, 5);
  std::vector<double> wrong(7, 0.0);
  try {
    f.set_parameters(wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Deformation, TemplatesFollowKeywords) {
  const double amp = 3.0, cap = 9.6;
  const auto wide = template_field("Stretch it WIDER", 5, 5, amp, cap);
  EXPECT_GT(wide.control(4, 2).x, 0);
  EXPECT_LT(wide.control(0, 2).x, 0);
  EXPECT_EQ(wide.control(2, 2).x, 0);
  const auto tall = template_field("taller", 5, 5, amp, cap);
  EXPECT_GT(tall.control(2, 4).y, 0);
  EXPECT_EQ(tall.control(4, 2).x, 0);
  const auto thin = template_field("thinner", 5, 5, amp, cap);
  EXPECT_LT(thin.control(4, 2).x, 0);
  EXPECT_TRUE(template_field("no keywords here", 5, 5, amp, cap).is_zero());
  EXPECT_LE(template_field("round wide twist", 5, 5, 50.0, cap).max_magnitude(),
            cap + 1e-12);

  // A widening template grows the horizontal extent of a disk.
  const auto m = oracle::disk(64, 64, 31.5, 31.5, 12);
  const auto out = apply_deformation(m, wide);
  int minx = 64, maxx = -1;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (out.at(x, y)) {
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
      }
    }
  }
  EXPECT_GT(maxx - minx + 1, 25);
}

TEST(Deformation, FieldJson) {
  const auto f = template_field("swirl", 5, 5, 2.0, 9.6);
  const auto j = field_to_json(f);
  EXPECT_EQ(j.at("grid").at(0), 5);
  EXPECT_EQ(j.at("displacements").size(), 50u);
  EXPECT_DOUBLE_EQ(j.at("cap").get<double>(), 9.6);
}

}  // namespace
}  // namespace maskforge
