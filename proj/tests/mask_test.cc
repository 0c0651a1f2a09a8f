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

#include <random>

#include <gtest/gtest.h>

#include "maskforge/error.h"
#include "maskforge/mask.h"
#include "oracles.h"

namespace maskforge {
namespace {

TEST(BinaryMask, RejectsBadShapes) {
  EXPECT_THROW(BinaryMask(0, 4), Error);
  EXPECT_THROW(BinaryMask(4, -1), Error);
  EXPECT_THROW(BinaryMask(2, 2, std::vector<std::uint8_t>{0, 1, 1}), Error);
  EXPECT_THROW(BinaryMask(2, 2, std::vector<std::uint8_t>{0, 1, 2, 0}), Error);
}

TEST(ProbMap, RejectsOutOfRangeValues) {
  EXPECT_THROW(ProbMap(2, 1, std::vector<double>{0.5, 1.5}), Error);
  EXPECT_THROW(ProbMap(2, 1, std::vector<double>{-0.1, 0.5}), Error);
  EXPECT_NO_THROW(ProbMap(2, 1, std::vector<double>{0.0, 1.0}));
}

TEST(Invert, ZerosAndOnes) {
  EXPECT_EQ(invert(BinaryMask(5, 3, 0)), BinaryMask(5, 3, 1));
  EXPECT_EQ(invert(BinaryMask(5, 3, 1)), BinaryMask(5, 3, 0));
}

TEST(Invert, CountsAndInvolution) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto m = oracle::random_mask(rng, 13, 9, 0.3);
    const auto inv = invert(m);
    EXPECT_EQ(inv.foreground_count(), m.size() - m.foreground_count());
    EXPECT_EQ(invert(inv), m);
  }
}

TEST(Threshold, Examples) {
  std::mt19937_64 rng(2);
  const auto p = oracle::random_prob(rng, 8, 8);
  EXPECT_EQ(threshold(p, 1.0).foreground_count(), 0u);
  EXPECT_EQ(threshold(ProbMap(4, 4, 0.5), 0.4), BinaryMask(4, 4, 1));
  EXPECT_THROW(threshold(p, 1.01), Error);
  EXPECT_THROW(threshold(p, -0.01), Error);
}

TEST(Threshold, MatchesElementwiseOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_prob(rng, 11, 7);
    const auto b = threshold(p, 0.5);
    for (int y = 0; y < 7; ++y) {
      for (int x = 0; x < 11; ++x) EXPECT_EQ(b.at(x, y), p.at(x, y) > 0.5 ? 1 : 0);
    }
  }
}

TEST(Threshold, Monotone) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = oracle::random_prob(rng, 9, 9);
    double t1 = u(rng), t2 = u(rng);
    if (t1 > t2) std::swap(t1, t2);
    const auto hi = threshold(p, t2), lo = threshold(p, t1);
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 9; ++x) EXPECT_LE(hi.at(x, y), lo.at(x, y));
    }
  }
}

TEST(Topology, StandardShapes) {
  const auto disk = oracle::disk(32, 32, 15.5, 15.5, 10);
  EXPECT_EQ(topology(disk), (TopologySignature{1, 0, 1}));
  const auto ring = oracle::annulus(32, 32, 15.5, 15.5, 12, 5);
  EXPECT_EQ(topology(ring), (TopologySignature{1, 1, 0}));
  EXPECT_EQ(topology(BinaryMask(6, 6)), (TopologySignature{0, 0, 0}));
}

TEST(Topology, TwoSquaresOneWithHole) {
  BinaryMask m(20, 10);
  for (int y = 2; y <= 7; ++y) {
    for (int x = 1; x <= 6; ++x) m.set(x, y, true);
    for (int x = 10; x <= 15; ++x) m.set(x, y, true);
  }
  for (int y = 4; y <= 5; ++y) {
    for (int x = 3; x <= 4; ++x) m.set(x, y, false);
  }
  EXPECT_EQ(topology(m), (TopologySignature{2, 1, 1}));
  const auto o = oracle::flood_topology(m);
  EXPECT_EQ(o.components, 2);
  EXPECT_EQ(o.holes, 1);
}

TEST(Topology, DiagonalConventions) {
  // Diagonal foreground pixels join (8-connected); the background pixels
  // between them stay separate only through 4-connectivity.
  BinaryMask m(4, 4);
  m.set(1, 1, true);
  m.set(2, 2, true);
  EXPECT_EQ(topology(m), (TopologySignature{1, 0, 1}));
  // A diamond of four pixels encloses nothing under 4-connected background.
  BinaryMask d(5, 5);
  d.set(2, 1, true);
  d.set(1, 2, true);
  d.set(3, 2, true);
  d.set(2, 3, true);
  EXPECT_EQ(topology(d), (TopologySignature{1, 1, 0}));
}

TEST(Topology, MatchesFloodFillOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const double density = 0.2 + 0.6 * (i % 7) / 6.0;
    const auto m = oracle::random_mask(rng, 12 + i % 5, 10 + i % 3, density);
    const auto t = topology(m);
    const auto o = oracle::flood_topology(m);
    ASSERT_EQ(t.components, o.components) << "case " << i;
    ASSERT_EQ(t.holes, o.holes) << "case " << i;
    ASSERT_EQ(t.euler, t.components - t.holes);
  }
}

TEST(Topology, InversionSwapsRolesForSimpleShapes) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const int holes = k % 4;
    const auto m = oracle::shape_with_holes(rng, holes);
    ASSERT_EQ(topology(m), (TopologySignature{1, holes, 1 - holes}));
    const auto inv = invert(m);
    const auto t = topology(inv);
    const auto o = oracle::flood_topology(inv);
    EXPECT_EQ(t.components, holes + 1);
    EXPECT_EQ(t.holes, 1);
    EXPECT_EQ(t.components, o.components);
    EXPECT_EQ(t.holes, o.holes);
  }
}

TEST(Iou, Examples) {
  const auto a = oracle::rect(4, 4, 0, 0, 1, 3);
  const auto b = oracle::rect(4, 4, 1, 0, 2, 3);
  EXPECT_DOUBLE_EQ(iou(a, b), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, oracle::rect(4, 4, 2, 0, 3, 3)), 0.0);
  EXPECT_DOUBLE_EQ(iou(BinaryMask(3, 3), BinaryMask(3, 3)), 1.0);
  EXPECT_THROW(iou(a, BinaryMask(3, 4)), Error);
}

TEST(Iou, Symmetric) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto a = oracle::random_mask(rng, 10, 10);
    const auto b = oracle::random_mask(rng, 10, 10);
    EXPECT_DOUBLE_EQ(iou(a, b), iou(b, a));
  }
}

TEST(Centroid, EmptyMaskThrows) {
  try {
    centroid(BinaryMask(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
  const auto c = centroid(oracle::rect(10, 10, 2, 4, 5, 7));
  EXPECT_DOUBLE_EQ(c.x, 3.5);
  EXPECT_DOUBLE_EQ(c.y, 5.5);
}

}  // namespace
}  // namespace maskforge
