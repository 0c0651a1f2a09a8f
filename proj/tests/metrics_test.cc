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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "maskforge/error.h"
#include "maskforge/metrics.h"
#include "oracles.h"

namespace maskforge {
namespace {

ProbMap complement(const ProbMap& p) {
  std::vector<double> v(p.data().begin(), p.data().end());
  for (auto& x : v) x = 1.0 - x;
  return ProbMap(p.width(), p.height(), std::move(v));
}

BinaryMask half_mask(int w, int h) {
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w / 2; ++x) m.set(x, y, true);
  }
  return m;
}

BinaryMask flip_fraction(const BinaryMask& m, double fraction, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(m.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<std::uint8_t> data(m.data().begin(), m.data().end());
  const auto n = static_cast<std::size_t>(fraction * static_cast<double>(m.size()));
  for (std::size_t i = 0; i < n; ++i) data[idx[i]] ^= 1;
  return BinaryMask(m.width(), m.height(), std::move(data));
}

TEST(Mae, Examples) {
  const auto gt = half_mask(8, 6);
  const auto p = ProbMap::FromMask(gt);
  EXPECT_EQ(mae(p, gt), 0.0);
  EXPECT_DOUBLE_EQ(mae(ProbMap(8, 6, 0.5), gt), 0.5);
  EXPECT_DOUBLE_EQ(mae(complement(p), gt), 1.0);
  EXPECT_THROW(mae(ProbMap(8, 5), gt), Error);
}

TEST(Mae, MatchesDirectSumAndComplementSymmetry) {
  std::mt19937_64 rng(91);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::random_prob(rng, 16, 16);
    const auto g = oracle::random_mask(rng, 16, 16);
    EXPECT_NEAR(mae(p, g), oracle::direct_mae(p, g), 1e-12);
    EXPECT_NEAR(mae(complement(p), invert(g)), mae(p, g), 1e-12);
  }
}

TEST(MaxF1, Examples) {
  const auto gt = half_mask(16, 16);
  EXPECT_DOUBLE_EQ(max_f1(ProbMap::FromMask(gt), gt), 1.0);
  EXPECT_NEAR(max_f1(ProbMap(16, 16, 128.0 / 255.0), gt), 2.0 / 3.0, 1e-15);
  // Prediction all below every positive threshold and zero: nothing predicted.
  EXPECT_EQ(max_f1(ProbMap(16, 16, 0.0), gt), 0.0);
  try {
    max_f1(ProbMap(16, 16, 0.5), BinaryMask(16, 16));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(max_f1(ProbMap(16, 15), gt), Error);
}

TEST(MaxF1, EqualsBruteForceSweep) {
  std::mt19937_64 rng(92);
  for (int i = 0; i < 200; ++i) {
    const auto p = i % 2 ? oracle::random_prob(rng, 16, 16)
                         : oracle::random_prob_8bit(rng, 16, 16);
    auto g = oracle::random_mask(rng, 16, 16, 0.1 + 0.8 * (i % 7) / 6.0);
    if (g.foreground_count() == 0) g.set(3, 3, true);
    EXPECT_EQ(max_f1(p, g), oracle::brute_max_f1(p, g)) << i;
  }
}

TEST(MaxF1, GridRequantizationInvariance) {
  std::mt19937_64 rng(93);
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_prob_8bit(rng, 16, 16);
    auto g = oracle::random_mask(rng, 16, 16);
    if (g.foreground_count() == 0) g.set(0, 0, true);
    std::vector<double> q(p.data().begin(), p.data().end());
    for (auto& v : q) v = std::round(v * 255.0) / 255.0;
    EXPECT_EQ(max_f1(ProbMap(16, 16, q), g), max_f1(p, g));
  }
}

TEST(DistanceTransform, MatchesBruteForce) {
  std::mt19937_64 rng(94);
  for (int i = 0; i < 30; ++i) {
    const auto m = oracle::random_mask(rng, 13 + i % 5, 11 + i % 3, 0.05 + 0.02 * i);
    if (m.foreground_count() == 0) continue;
    const auto dt = distance_transform(m);
    const auto brute = oracle::brute_edt(m);
    ASSERT_EQ(dt.distance.size(), brute.size());
    for (std::size_t k = 0; k < brute.size(); ++k) {
      EXPECT_NEAR(dt.distance[k], brute[k], 1e-12);
      const int n = dt.nearest[k];
      ASSERT_GE(n, 0);
      EXPECT_EQ(m.data()[static_cast<std::size_t>(n)], 1);
      const int w = m.width();
      const double dx = static_cast<double>(n % w - static_cast<int>(k) % w);
      const double dy = static_cast<double>(n / w - static_cast<int>(k) / w);
      EXPECT_NEAR(std::hypot(dx, dy), brute[k], 1e-12);
    }
  }
}

TEST(WeightedFbeta, Examples) {
  std::mt19937_64 rng(95);
  const auto gt = oracle::random_blob(rng, 48, 48);
  EXPECT_NEAR(weighted_fbeta(ProbMap::FromMask(gt), gt), 1.0, 1e-9);
  EXPECT_LT(weighted_fbeta(complement(ProbMap::FromMask(gt)), gt), 0.05);
  EXPECT_THROW(weighted_fbeta(ProbMap(48, 48), BinaryMask(48, 48)), Error);
}

TEST(WeightedFbeta, MonotoneInCorruption) {
  std::mt19937_64 rng(96);
  for (int i = 0; i < 20; ++i) {
    const auto gt = oracle::random_blob(rng, 48, 48);
    const auto light = ProbMap::FromMask(flip_fraction(gt, 0.05, rng));
    const auto heavy = ProbMap::FromMask(flip_fraction(gt, 0.20, rng));
    EXPECT_GT(weighted_fbeta(light, gt), weighted_fbeta(heavy, gt)) << i;
  }
}

TEST(SMeasure, Examples) {
  const auto gt = half_mask(16, 16);
  EXPECT_NEAR(s_measure(ProbMap::FromMask(gt), gt), 1.0, 1e-12);
  const BinaryMask bg(16, 16), fg(16, 16, 1);
  EXPECT_DOUBLE_EQ(s_measure(ProbMap(16, 16, 0.0), bg), 1.0);
  EXPECT_NEAR(s_measure(ProbMap(16, 16, 0.3), bg), 0.7, 1e-12);
  EXPECT_NEAR(s_measure(ProbMap(16, 16, 0.3), fg), 0.3, 1e-12);
  EXPECT_LT(s_measure(complement(ProbMap::FromMask(gt)), gt), 0.5);
  EXPECT_THROW(s_measure(ProbMap(15, 16), gt), Error);
}

TEST(EMeasure, Examples) {
  const auto gt = half_mask(16, 16);
  EXPECT_NEAR(e_measure(ProbMap::FromMask(gt), gt), 1.0, 1e-12);
  EXPECT_LT(e_measure(complement(ProbMap::FromMask(gt)), gt), 0.25);
  const BinaryMask bg(16, 16);
  EXPECT_DOUBLE_EQ(e_measure(ProbMap(16, 16, 0.0), bg), 1.0);
  EXPECT_DOUBLE_EQ(enhanced_alignment(bg, bg), 1.0);
  EXPECT_THROW(e_measure(ProbMap(16, 17), gt), Error);
}

TEST(EMeasure, MatchesLiteralFormula) {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_prob(rng, 16, 16);
    const auto g = oracle::random_mask(rng, 16, 16, 0.05 + 0.9 * (i % 10) / 9.0);
    EXPECT_NEAR(e_measure(p, g), oracle::literal_e_measure(p, g), 1e-9) << i;
  }
}

TEST(EMeasure, MaxModeDominatesAdaptive) {
  std::mt19937_64 rng(98);
  MetricConfig max_cfg;
  max_cfg.e_measure_mode = EMeasureMode::kMaxOverThresholds;
  for (int i = 0; i < 20; ++i) {
    const auto p = oracle::random_prob_8bit(rng, 16, 16);
    const auto g = oracle::random_mask(rng, 16, 16);
    EXPECT_GE(e_measure(p, g, max_cfg) + 1e-12, e_measure(p, g));
  }
}

TEST(Evaluate, PerfectPredictionFixedPoint) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    auto g = oracle::random_mask(rng, 24, 20, 0.2 + 0.6 * (i % 5) / 4.0);
    if (g.foreground_count() == 0) g.set(1, 1, true);
    const auto r = evaluate(ProbMap::FromMask(g), g);
    EXPECT_NEAR(r.max_f1, 1.0, 1e-9);
    EXPECT_NEAR(r.weighted_fbeta, 1.0, 1e-9);
    EXPECT_NEAR(r.mae, 0.0, 1e-9);
    EXPECT_NEAR(r.s_measure, 1.0, 1e-9);
    EXPECT_NEAR(r.e_measure, 1.0, 1e-9);
  }
}

TEST(Evaluate, FieldsMatchStandaloneBitExactly) {
  std::mt19937_64 rng(100);
  for (int i = 0; i < 200; ++i) {
    const auto p = oracle::random_prob(rng, 16, 16);
    auto g = oracle::random_mask(rng, 16, 16);
    if (g.foreground_count() == 0) g.set(5, 5, true);
    const auto r = evaluate(p, g);
    EXPECT_EQ(r.max_f1, max_f1(p, g));
    EXPECT_EQ(r.weighted_fbeta, weighted_fbeta(p, g));
    EXPECT_EQ(r.mae, mae(p, g));
    EXPECT_EQ(r.s_measure, s_measure(p, g));
    EXPECT_EQ(r.e_measure, e_measure(p, g));
    EXPECT_EQ(evaluate(p, g), r);
    for (double v : {r.max_f1, r.weighted_fbeta, r.mae, r.s_measure, r.e_measure}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Evaluate, ReportHelpers) {
  const MetricReport a{1, 1, 0, 1, 1}, b{0, 0.5, 0.5, 0, 0.5};
  const auto m = mean_report({a, b});
  EXPECT_DOUBLE_EQ(m.max_f1, 0.5);
  EXPECT_DOUBLE_EQ(m.mae, 0.25);
  const auto j = to_json(a);
  EXPECT_EQ(j.at("max_f1"), 1.0);
  EXPECT_TRUE(j.contains("e_measure"));
  MetricConfig bad;
  bad.threshold_levels = 1;
  EXPECT_THROW(bad.validate(), Error);
}

}  // namespace
}  // namespace maskforge
