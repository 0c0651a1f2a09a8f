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
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "maskforge/canny.h"
#include "maskforge/deformation.h"
#include "maskforge/keypoints.h"
#include "maskforge/mask.h"
#include "maskforge/metrics.h"
#include "maskforge/rigid.h"
#include "maskforge/samples.h"
#include "maskforge/trainer.h"

namespace {

using namespace maskforge;

BinaryMask disk(int n, double r) {
  BinaryMask m(n, n);
  const double c = (n - 1) / 2.0;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) m.set(x, y, (x - c) * (x - c) + (y - c) * (y - c) <= r * r);
  return m;
}

// Blurry prediction around a disk, values in [0, 1].
ProbMap soft_prediction(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  std::vector<double> v(static_cast<std::size_t>(n) * n);
  const double c = (n - 1) / 2.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double d = std::hypot(x - c, y - c) - n * 0.3;
      v[static_cast<std::size_t>(y) * n + x] =
          std::clamp(1.0 / (1.0 + std::exp(d / 3.0)) + u(rng), 0.0, 1.0);
    }
  }
  return ProbMap(n, n, std::move(v));
}

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryMask gt = disk(n, n * 0.3);
  const ProbMap pred = soft_prediction(n);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(pred, gt));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Evaluate)->Arg(64)->Arg(256)->Arg(512);

void BM_Canny(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryMask m = disk(n, n * 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(canny(m));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Canny)->Arg(64)->Arg(256);

void BM_RigidEdit(benchmark::State& state) {
  const BinaryMask m = disk(256, 80);
  RigidTransform t;
  t.rotation = 0.4;
  t.scale = 1.2;
  for (auto _ : state) benchmark::DoNotOptimize(rigid_edit(m, t));
}
BENCHMARK(BM_RigidEdit);

void BM_AnalyzeSource(benchmark::State& state) {
  const auto samples = sample_masks();
  const TrainConfig config;
  for (auto _ : state) {
    for (const auto& s : samples) benchmark::DoNotOptimize(analyze_source(s.mask, config));
  }
}
BENCHMARK(BM_AnalyzeSource);

// Ten generator steps on the bundled set, one variant per source.
void BM_TrainSteps(benchmark::State& state) {
  const auto samples = sample_masks();
  std::vector<BinaryMask> masks;
  std::vector<std::string> prompts;
  for (const auto& s : samples) {
    masks.push_back(s.mask);
    prompts.push_back(s.prompt);
  }
  TrainConfig config;
  config.gen_steps = 10;
  config.variants_per_source = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(masks, prompts, config));
}
BENCHMARK(BM_TrainSteps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
