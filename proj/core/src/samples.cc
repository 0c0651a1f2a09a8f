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

#include "maskforge/samples.h"

#include <cmath>
#include <functional>

namespace maskforge {
namespace {

constexpr int kSize = 64;

using Inside = std::function<bool(double, double)>;

// Pixel centres are sampled at integer coordinates.
BinaryMask rasterize(const Inside& inside) {
  BinaryMask m(kSize, kSize);
  for (int y = 0; y < kSize; ++y) {
    for (int x = 0; x < kSize; ++x) m.set(x, y, inside(x, y));
  }
  return m;
}

bool in_disk(double x, double y, double cx, double cy, double r) {
  return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r;
}

bool in_rect(double x, double y, double x0, double y0, double x1, double y1) {
  return x >= x0 && x <= x1 && y >= y0 && y <= y1;
}

bool in_ellipse(double x, double y, double cx, double cy, double rx, double ry) {
  const double u = (x - cx) / rx, v = (y - cy) / ry;
  return u * u + v * v <= 1.0;
}

}  // namespace

std::vector<SampleMask> sample_masks() {
  std::vector<SampleMask> out;
  out.push_back({"disk", rasterize([](double x, double y) {
                   return in_disk(x, y, 31.5, 31.5, 18);
                 }),
                 "make it square with sharp corners"});
  out.push_back({"square", rasterize([](double x, double y) {
                   return in_rect(x, y, 17, 17, 46, 46);
                 }),
                 "rounder and softer"});
  out.push_back({"ellipse", rasterize([](double x, double y) {
                   return in_ellipse(x, y, 31.5, 31.5, 22, 13);
                 }),
                 "taller"});
  out.push_back({"ring", rasterize([](double x, double y) {
                   return in_disk(x, y, 31.5, 31.5, 21) &&
                          !in_disk(x, y, 31.5, 31.5, 9);
                 }),
                 "wider ring"});
  out.push_back({"slab_two_holes", rasterize([](double x, double y) {
                   return in_rect(x, y, 10, 18, 53, 45) &&
                          !in_disk(x, y, 22, 31.5, 6) &&
                          !in_disk(x, y, 41, 31.5, 6);
                 }),
                 "bend it"});
  out.push_back({"ell", rasterize([](double x, double y) {
                   return in_rect(x, y, 14, 12, 27, 50) ||
                          in_rect(x, y, 14, 38, 48, 50);
                 }),
                 "thinner"});
  out.push_back({"triangle", rasterize([](double x, double y) {
                   // apex at top, base at y = 50
                   if (y < 12 || y > 50) return false;
                   const double half = (y - 12) * 0.6;
                   return std::abs(x - 31.5) <= half;
                 }),
                 "rounder"});
  out.push_back({"disk_three_holes", rasterize([](double x, double y) {
                   return in_disk(x, y, 31.5, 31.5, 24) &&
                          !in_disk(x, y, 31.5, 20, 5.5) &&
                          !in_disk(x, y, 21.5, 38, 5.5) &&
                          !in_disk(x, y, 41.5, 38, 5.5);
                 }),
                 "swirl"});
  out.push_back({"cross", rasterize([](double x, double y) {
                   return in_rect(x, y, 25, 10, 38, 53) ||
                          in_rect(x, y, 10, 25, 53, 38);
                 }),
                 "stretch wider"});
  out.push_back({"frame", rasterize([](double x, double y) {
                   return in_rect(x, y, 12, 14, 51, 49) &&
                          !in_rect(x, y, 22, 24, 41, 39);
                 }),
                 "make it larger and softer"});
  return out;
}

}  // namespace maskforge
