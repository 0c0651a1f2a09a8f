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

#ifndef MASKFORGE_SAMPLING_H_
#define MASKFORGE_SAMPLING_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace maskforge {

// Uniform draw from [lo, hi]; a collapsed interval returns lo. One value is
// consumed either way so changing one range never shifts the others' draws.
template <typename Rng>
double uniform_in(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const double u = dist(rng);
  if (lo == hi) return lo;
  return lo + (hi - lo) * u;
}

// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = mix_seed(base);
  for (std::uint64_t p : parts) s = mix_seed(s ^ mix_seed(p + 0x632be59bd9b4e019ULL));
  return s;
}

}  // namespace maskforge

#endif  // MASKFORGE_SAMPLING_H_
