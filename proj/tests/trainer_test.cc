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
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "maskforge/error.h"
#include "maskforge/losses.h"
#include "maskforge/trainer.h"
#include "oracles.h"

namespace maskforge {
namespace {

TrainConfig quick_config(int steps) {
  TrainConfig c;
  c.gen_steps = steps;
  c.variants_per_source = 2;
  c.seed = 5;
  return c;
}

std::vector<BinaryMask> two_sources() {
  return {oracle::disk(64, 64, 31.5, 31.5, 18),
          oracle::annulus(64, 64, 31.5, 31.5, 22, 10)};
}

TEST(Losses, ContentLossExamples) {
  const BinaryMask a(4, 4, 1), b(4, 4, 0);
  EXPECT_DOUBLE_EQ(content_loss(a, a), 0.0);
  EXPECT_DOUBLE_EQ(content_loss(a, b), 1.0);
  auto c = b;
  c.set(0, 0, true);
  c.set(3, 2, true);
  EXPECT_DOUBLE_EQ(content_loss(c, b), 2.0 / 16.0);
  EXPECT_THROW(content_loss(BinaryMask(3, 4), b), Error);
}

TEST(Losses, TotalComposition) {
  const auto r = total_loss(-0.7, 0.1, 0.2);
  EXPECT_DOUBLE_EQ(r.total, -0.7 + 0.8 * 0.1 + 0.5 * 0.2);
  EXPECT_DOUBLE_EQ(r.lambda1, 0.8);
  const auto q = total_loss(0.0, 1.0, 1.0, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(q.total, 2.0);
}

TEST(ProjectTopology, KeepsValidEdits) {
  const auto src = oracle::disk(64, 64, 31.5, 31.5, 15);
  const DeformationField zero;
  const auto p = project_topology(src, src, zero);
  EXPECT_EQ(p.halvings, 0);
  EXPECT_FALSE(p.fell_back);
  EXPECT_EQ(p.mask, src);
}

TEST(ProjectTopology, HalvesUntilValid) {
  // A uniform shift that pushes the disk fully out of frame empties it;
  // halving brings it back in.
  const auto src = oracle::disk(64, 64, 31.5, 31.5, 8);
  DeformationField f(5, 5);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) f.set_control(i, j, {80, 0});
  }
  const auto edited = apply_deformation(src, f);
  ASSERT_NE(topology(edited), topology(src));
  const auto p = project_topology(src, edited, f);
  EXPECT_FALSE(p.fell_back);
  EXPECT_GE(p.halvings, 1);
  EXPECT_EQ(topology(p.mask), topology(src));
  EXPECT_EQ(p.mask, apply_deformation(src, p.field));
}

TEST(ProjectTopology, FallsBackToSource) {
  const auto src = oracle::disk(64, 64, 31.5, 31.5, 8);
  // Every halving of this field still moves the disk out of frame.
  DeformationField f(5, 5);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) f.set_control(i, j, {1e5, 0});
  }
  const auto p = project_topology(src, apply_deformation(src, f), f);
  EXPECT_EQ(p.mask, src);
  EXPECT_TRUE(p.fell_back);
  EXPECT_TRUE(p.field.is_zero());
}

TEST(ProjectTopology, ZeroFieldRecoversSource) {
  const auto src = oracle::disk(64, 64, 31.5, 31.5, 8);
  const auto bad = oracle::annulus(64, 64, 31.5, 31.5, 20, 10);
  const auto p = project_topology(src, bad, DeformationField{});
  EXPECT_EQ(p.mask, src);
  EXPECT_FALSE(p.fell_back);
  EXPECT_EQ(p.halvings, 1);
  EXPECT_THROW(project_topology(BinaryMask(8, 8), BinaryMask(8, 8), DeformationField{}),
               Error);
}

TEST(Train, TraceShapeAndComposition) {
  const auto sources = two_sources();
  const std::vector<std::string> prompts{"rounder", "wider"};
  const auto cfg = quick_config(4);
  const auto r = train(sources, prompts, cfg);
  ASSERT_EQ(r.trace.size(), 5u);
  EXPECT_EQ(r.generators.size(), 4u);
  EXPECT_EQ(r.emitted.size(), 4u);
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& l = r.trace[i].loss;
    EXPECT_EQ(r.trace[i].step, static_cast<int>(i));
    EXPECT_NEAR(l.total, l.gan + cfg.lambda1 * l.content + cfg.lambda2 * l.structure,
                1e-12);
    EXPECT_LT(l.gan, 0.0);
    EXPECT_GE(l.content, 0.0);
    EXPECT_GE(l.structure, 0.0);
  }
  EXPECT_EQ(r.generators[2].source_index, 1);
  EXPECT_EQ(r.generators[3].variant, 1);
  EXPECT_EQ(r.generators[2].prompt, "wider");
}

TEST(Train, EmittedMasksKeepSourceTopology) {
  std::mt19937_64 rng(81);
  std::vector<BinaryMask> sources;
  for (int h = 0; h < 4; ++h) sources.push_back(oracle::shape_with_holes(rng, h));
  auto cfg = quick_config(3);
  cfg.template_fraction = 0.15;  // aggressive templates exercise projection
  const std::vector<std::string> prompts{"swirl", "thinner", "wider ring", "bend it"};
  const auto r = train(sources, prompts, cfg);
  for (std::size_t g = 0; g < r.emitted.size(); ++g) {
    const auto& src = sources[static_cast<std::size_t>(r.generators[g].source_index)];
    const auto want = oracle::flood_topology(src);
    const auto got = oracle::flood_topology(r.emitted[g]);
    EXPECT_EQ(got.components, want.components) << g;
    EXPECT_EQ(got.holes, want.holes) << g;
    EXPECT_LE(r.generators[g].field.max_magnitude(),
              default_displacement_cap(64, 64) + 1e-9);
  }
}

TEST(Train, Deterministic) {
  const auto sources = two_sources();
  const std::vector<std::string> prompts{"taller"};
  const auto cfg = quick_config(3);
  const auto a = train(sources, prompts, cfg);
  const auto b = train(sources, prompts, cfg);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].loss.total, b.trace[i].loss.total);
  }
  EXPECT_EQ(a.emitted, b.emitted);
  EXPECT_EQ(a.discriminator.flatten(), b.discriminator.flatten());
  auto other = cfg;
  other.seed = 6;
  EXPECT_NE(train(sources, prompts, other).discriminator.flatten(),
            a.discriminator.flatten());
}

TEST(Train, ZeroLearningRatesFreezeState) {
  const auto sources = two_sources();
  auto cfg = quick_config(3);
  cfg.gen_lr = 0.0;
  cfg.disc_lr = 0.0;
  const auto r = train(sources, {}, cfg);
  const auto init = train(sources, {}, [&] {
    auto c = cfg;
    c.gen_steps = 0;
    return c;
  }());
  ASSERT_EQ(init.trace.size(), 1u);
  for (const auto& row : r.trace) {
    EXPECT_EQ(row.loss.total, r.trace[0].loss.total);
  }
  EXPECT_EQ(r.discriminator.flatten(), init.discriminator.flatten());
  for (std::size_t g = 0; g < r.generators.size(); ++g) {
    EXPECT_EQ(r.generators[g].field, init.generators[g].field);
  }
}

TEST(Train, WarmupOnlyMovesDiscriminator) {
  const auto sources = two_sources();
  auto cfg = quick_config(0);
  const auto cold = train(sources, {}, cfg);
  cfg.disc_warmup = 20;
  const auto warm = train(sources, {}, cfg);
  EXPECT_NE(cold.discriminator.flatten(), warm.discriminator.flatten());
  for (std::size_t g = 0; g < cold.generators.size(); ++g) {
    EXPECT_EQ(cold.generators[g].field, warm.generators[g].field);
  }
  EXPECT_EQ(cold.trace[0].loss.content, warm.trace[0].loss.content);
}

TEST(Train, CandidateLossMatchesParts) {
  const auto src = oracle::disk(64, 64, 31.5, 31.5, 16);
  const TrainConfig cfg;
  const auto s = analyze_source(src, cfg);
  const auto d = DiscriminatorState::Zero();
  const auto zero = candidate_loss(DeformationField(5, 5, 9.6), s, d, cfg);
  EXPECT_NEAR(zero.gan, -std::log(2.0), 1e-12);
  EXPECT_EQ(zero.content, 0.0);
  EXPECT_NEAR(zero.structure, 0.0, 1e-12);
  // Pushing the disk out of frame is an invalid candidate.
  DeformationField away(5, 5);
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) away.set_control(i, j, {90, 0});
  }
  EXPECT_TRUE(std::isinf(candidate_loss(away, s, d, cfg).total));
}

TEST(Train, Errors) {
  const std::vector<BinaryMask> none;
  EXPECT_THROW(train(none, {}, TrainConfig{}), Error);
  const std::vector<BinaryMask> empty{BinaryMask(32, 32)};
  EXPECT_THROW(train(empty, {}, TrainConfig{}), Error);
  TrainConfig bad;
  bad.k_d = -1;
  EXPECT_THROW(bad.validate(), Error);
  bad = TrainConfig{};
  bad.grid_w = 6;  // 2 * 6 * 5 = 60 parameters
  EXPECT_THROW(bad.validate(), Error);
  bad = TrainConfig{};
  bad.disc_warmup = -2;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Train, TraceCsv) {
  std::vector<TraceRow> rows(2);
  rows[1].step = 1;
  rows[1].loss = LossReport{-0.5, 0.25, 0.5, 0.125};
  std::ostringstream out;
  write_trace_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "step,gan,content,structure,total");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,0,0");
  std::getline(in, line);
  EXPECT_EQ(line, "1,-0.5,0.25,0.5,0.125");
}

TEST(TrainConfigJson, RoundTrip) {
  TrainConfig c;
  c.gen_steps = 17;
  c.disc_warmup = 4;
  c.grid_w = 4;
  c.seed = 99;
  const nlohmann::json j = c;
  const auto back = j.get<TrainConfig>();
  EXPECT_EQ(back.gen_steps, 17);
  EXPECT_EQ(back.disc_warmup, 4);
  EXPECT_EQ(back.grid_w, 4);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(nlohmann::json(back), j);
}

}  // namespace
}  // namespace maskforge
