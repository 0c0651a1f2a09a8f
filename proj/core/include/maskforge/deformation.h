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

#ifndef MASKFORGE_DEFORMATION_H_
#define MASKFORGE_DEFORMATION_H_

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/mask.h"

namespace maskforge {

// Control-grid displacement field. Control point (i, j) sits at pixel
// (i * (W - 1) / (grid_w - 1), j * (H - 1) / (grid_h - 1)); displacements are
// bilinearly interpolated in between. Every control displacement has
// magnitude <= cap; mutators clamp, so interpolated values obey it too.
class DeformationField {
 public:
  DeformationField(int grid_w = 5, int grid_h = 5,
                   double cap = std::numeric_limits<double>::infinity());

  int grid_w() const noexcept { return grid_w_; }
  int grid_h() const noexcept { return grid_h_; }
  double cap() const noexcept { return cap_; }
  int parameter_count() const noexcept { return 2 * grid_w_ * grid_h_; }

  // Interleaved (dx, dy) per control point, row-major over the grid.
  std::span<const double> parameters() const noexcept { return params_; }
  void set_parameters(std::span<const double> values);

  Point2 control(int i, int j) const;
  void set_control(int i, int j, Point2 d);

  // Interpolated displacement at pixel (x, y) of a width x height image.
  Point2 displacement_at(double x, double y, int width, int height) const;

  DeformationField scaled(double factor) const;
  double max_magnitude() const;
  bool is_zero() const;

  friend bool operator==(const DeformationField&,
                         const DeformationField&) = default;

 private:
  void clamp_all();

  int grid_w_;
  int grid_h_;
  double cap_;
  std::vector<double> params_;
};

// Default cap: 0.15 * min(W, H).
double default_displacement_cap(int width, int height, double fraction = 0.15);

// Backward warp: out(p) = mask(p - d(p)) with bilinear sampling, zero outside
// the frame, thresholded at 0.5. A uniform field (3, 0) moves the shape 3 px
// to the right.
BinaryMask apply_deformation(const BinaryMask& mask,
                             const DeformationField& field);

// Named deformation templates selected by keywords in a prompt ("rounder",
// "square edges", "wider", "taller", "twist", "thinner"). Unknown prompts give
// the zero field. `amplitude` is in pixels.
DeformationField template_field(std::string_view prompt, int grid_w, int grid_h,
                                double amplitude, double cap);

nlohmann::json field_to_json(const DeformationField& field);

}  // namespace maskforge

#endif  // MASKFORGE_DEFORMATION_H_
