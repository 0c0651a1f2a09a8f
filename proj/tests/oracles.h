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

// Independent reference implementations used only by tests. They favour
// obviousness over speed and share no code with the library.
#ifndef MASKFORGE_TESTS_ORACLES_H_
#define MASKFORGE_TESTS_ORACLES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "maskforge/mask.h"

namespace oracle {

using maskforge::BinaryMask;
using maskforge::ProbMap;

// 8-bit grayscale PNG written with stored (uncompressed) deflate blocks.
std::vector<std::uint8_t> encode_png_gray(int width, int height,
                                          const std::vector<std::uint8_t>& pixels);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

struct Topology {
  int components = 0;
  int holes = 0;
};

// Pads the mask with one background pixel on every side, flood-fills
// foreground with 8-connectivity and background with 4-connectivity; the
// background component containing the padding is not a hole.
Topology flood_topology(const BinaryMask& m);

// Euclidean distance to the nearest foreground pixel by exhaustive search.
std::vector<double> brute_edt(const BinaryMask& m);

double direct_mae(const ProbMap& p, const BinaryMask& g);

// Binarizes at every threshold k / (L - 1) with pred > t and counts.
double brute_max_f1(const ProbMap& p, const BinaryMask& g, int levels = 256);

// Enhanced-alignment measure written straight from its definition.
double literal_e_measure(const ProbMap& p, const BinaryMask& g);

BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density = 0.5);
ProbMap random_prob(std::mt19937_64& rng, int w, int h);
// Prediction values on the 8-bit grid k / 255.
ProbMap random_prob_8bit(std::mt19937_64& rng, int w, int h);

BinaryMask disk(int w, int h, double cx, double cy, double r);
BinaryMask rect(int w, int h, int x0, int y0, int x1, int y1);  // inclusive
BinaryMask annulus(int w, int h, double cx, double cy, double r_out, double r_in);
// Union of random disks and rectangles kept away from the border.
BinaryMask random_blob(std::mt19937_64& rng, int w, int h);
// Solid shape with `holes` round holes, 64x64.
BinaryMask shape_with_holes(std::mt19937_64& rng, int holes);

BinaryMask rotate90_cw(const BinaryMask& m);  // index permutation on screen

std::filesystem::path temp_dir(const std::string& name);

}  // namespace oracle

#endif  // MASKFORGE_TESTS_ORACLES_H_
