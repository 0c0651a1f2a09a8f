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

#ifndef MASKFORGE_SCHEDULE_H_
#define MASKFORGE_SCHEDULE_H_

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace maskforge {

// Forward-diffusion variance schedule. Vectors are indexed by t - 1 for
// t in [1, T].
struct NoiseSchedule {
  int steps = 0;
  std::vector<double> betas;
  std::vector<double> alphas;
  std::vector<double> alpha_bars;
};

struct ScheduleConfig {
  int steps = 1000;
  double beta_start = 1e-4;
  double beta_end = 0.02;
};

void to_json(nlohmann::json& j, const ScheduleConfig& c);
void from_json(const nlohmann::json& j, ScheduleConfig& c);

// Linear betas from beta_start to beta_end. Requires T >= 1 and
// 0 < beta_start <= beta_end < 1.
NoiseSchedule make_schedule(int steps, double beta_start, double beta_end);
NoiseSchedule make_schedule(const ScheduleConfig& c);

// Closed-form sample of x_t given x0 with standard normal noise drawn from
// `seed`. Requires 1 <= t <= T.
std::vector<double> forward_noise(std::span<const double> x0, int t,
                                  const NoiseSchedule& schedule,
                                  std::uint64_t seed);

}  // namespace maskforge

#endif  // MASKFORGE_SCHEDULE_H_
