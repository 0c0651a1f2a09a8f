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

#include "maskforge/schedule.h"

#include <cmath>
#include <random>
#include <string>

#include "maskforge/error.h"

namespace maskforge {

void to_json(nlohmann::json& j, const ScheduleConfig& c) {
  j = {{"steps", c.steps}, {"beta_start", c.beta_start}, {"beta_end", c.beta_end}};
}

void from_json(const nlohmann::json& j, ScheduleConfig& c) {
  c.steps = j.value("steps", c.steps);
  c.beta_start = j.value("beta_start", c.beta_start);
  c.beta_end = j.value("beta_end", c.beta_end);
}

NoiseSchedule make_schedule(int steps, double beta_start, double beta_end) {
  if (steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "schedule needs at least one step");
  }
  if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "schedule requires 0 < beta_start <= beta_end < 1");
  }
  NoiseSchedule s;
  s.steps = steps;
  s.betas.resize(steps);
  s.alphas.resize(steps);
  s.alpha_bars.resize(steps);
  double bar = 1.0;
  for (int i = 0; i < steps; ++i) {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    s.betas[i] = beta_start + (beta_end - beta_start) * frac;
    s.alphas[i] = 1.0 - s.betas[i];
    bar *= s.alphas[i];
    s.alpha_bars[i] = bar;
  }
  return s;
}

NoiseSchedule make_schedule(const ScheduleConfig& c) {
  return make_schedule(c.steps, c.beta_start, c.beta_end);
}

std::vector<double> forward_noise(std::span<const double> x0, int t,
                                  const NoiseSchedule& schedule,
                                  std::uint64_t seed) {
  if (t < 1 || t > schedule.steps) {
    throw Error(ErrorCode::kInvalidArgument,
                "step " + std::to_string(t) + " outside [1, " +
                    std::to_string(schedule.steps) + "]");
  }
  const double bar = schedule.alpha_bars[t - 1];
  const double a = std::sqrt(bar);
  const double b = std::sqrt(1.0 - bar);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) out[i] = a * x0[i] + b * normal(rng);
  return out;
}

}  // namespace maskforge
