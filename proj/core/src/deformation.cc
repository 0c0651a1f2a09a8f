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

#include "maskforge/deformation.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace maskforge {

DeformationField::DeformationField(int grid_w, int grid_h, double cap)
    : grid_w_(grid_w), grid_h_(grid_h), cap_(cap) {
  if (grid_w < 2 || grid_h < 2) {
    throw Error(ErrorCode::kInvalidArgument, "control grid must be at least 2x2");
  }
  if (!(cap >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "displacement cap must be >= 0");
  }
  params_.assign(static_cast<std::size_t>(parameter_count()), 0.0);
}

void DeformationField::set_parameters(std::span<const double> values) {
  if (values.size() != params_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "deformation parameter count");
  }
  std::copy(values.begin(), values.end(), params_.begin());
  clamp_all();
}

Point2 DeformationField::control(int i, int j) const {
  const std::size_t k = 2 * (static_cast<std::size_t>(j) * grid_w_ + i);
  return {params_[k], params_[k + 1]};
}

void DeformationField::set_control(int i, int j, Point2 d) {
  const std::size_t k = 2 * (static_cast<std::size_t>(j) * grid_w_ + i);
  params_[k] = d.x;
  params_[k + 1] = d.y;
  clamp_all();
}

void DeformationField::clamp_all() {
  for (std::size_t k = 0; k < params_.size(); k += 2) {
    const double m = std::hypot(params_[k], params_[k + 1]);
    if (m > cap_) {
      const double f = cap_ / m;
      params_[k] *= f;
      params_[k + 1] *= f;
    }
  }
}

Point2 DeformationField::displacement_at(double x, double y, int width,
                                         int height) const {
  const double u =
      width > 1 ? std::clamp(x * (grid_w_ - 1) / (width - 1.0), 0.0,
                             grid_w_ - 1.0)
                : 0.0;
  const double v =
      height > 1 ? std::clamp(y * (grid_h_ - 1) / (height - 1.0), 0.0,
                              grid_h_ - 1.0)
                 : 0.0;
  const int i0 = std::min(static_cast<int>(u), grid_w_ - 2);
  const int j0 = std::min(static_cast<int>(v), grid_h_ - 2);
  const double fu = u - i0;
  const double fv = v - j0;
  const Point2 a = control(i0, j0), b = control(i0 + 1, j0);
  const Point2 c = control(i0, j0 + 1), d = control(i0 + 1, j0 + 1);
  return {(1 - fu) * (1 - fv) * a.x + fu * (1 - fv) * b.x +
              (1 - fu) * fv * c.x + fu * fv * d.x,
          (1 - fu) * (1 - fv) * a.y + fu * (1 - fv) * b.y +
              (1 - fu) * fv * c.y + fu * fv * d.y};
}

DeformationField DeformationField::scaled(double factor) const {
  DeformationField out = *this;
  for (double& p : out.params_) p *= factor;
  out.clamp_all();
  return out;
}

double DeformationField::max_magnitude() const {
  double m = 0.0;
  for (std::size_t k = 0; k < params_.size(); k += 2) {
    m = std::max(m, std::hypot(params_[k], params_[k + 1]));
  }
  return m;
}

bool DeformationField::is_zero() const {
  return std::all_of(params_.begin(), params_.end(),
                     [](double p) { return p == 0.0; });
}

double default_displacement_cap(int width, int height, double fraction) {
  return fraction * std::min(width, height);
}

BinaryMask apply_deformation(const BinaryMask& mask,
                             const DeformationField& field) {
  const int w = mask.width();
  const int h = mask.height();
  if (field.is_zero()) return mask;
  std::vector<std::uint8_t> out(mask.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Point2 d = field.displacement_at(x, y, w, h);
      const double sx = x - d.x;
      const double sy = y - d.y;
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      const double value = (1 - fx) * (1 - fy) * mask.get_or_zero(x0, y0) +
                           fx * (1 - fy) * mask.get_or_zero(x0 + 1, y0) +
                           (1 - fx) * fy * mask.get_or_zero(x0, y0 + 1) +
                           fx * fy * mask.get_or_zero(x0 + 1, y0 + 1);
      out[static_cast<std::size_t>(y) * w + x] = value >= 0.5 ? 1 : 0;
    }
  }
  return BinaryMask(w, h, std::move(out));
}

DeformationField template_field(std::string_view prompt, int grid_w, int grid_h,
                                double amplitude, double cap) {
  std::string text(prompt);
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto has = [&](std::initializer_list<const char*> words) {
    return std::any_of(words.begin(), words.end(), [&](const char* w) {
      return text.find(w) != std::string::npos;
    });
  };

  DeformationField field(grid_w, grid_h, cap);
  for (int j = 0; j < grid_h; ++j) {
    for (int i = 0; i < grid_w; ++i) {
      // Normalized control position in [-1, 1].
      const double u = 2.0 * i / (grid_w - 1) - 1.0;
      const double v = 2.0 * j / (grid_h - 1) - 1.0;
      const double r2 = u * u + v * v;
      Point2 d{0.0, 0.0};
      if (has({"round", "bulg", "inflate", "soft"})) {
        d.x += u * std::max(0.0, 1.0 - r2 / 2.0);
        d.y += v * std::max(0.0, 1.0 - r2 / 2.0);
      }
      if (has({"square", "sharp", "box", "corner"})) {
        d.x += u * std::abs(v);
        d.y += v * std::abs(u);
      }
      if (has({"wide", "wider", "stretch", "horizontal", "longer"})) d.x += u;
      if (has({"tall", "taller", "vertical", "higher"})) d.y += v;
      if (has({"twist", "swirl", "bend", "curv"})) {
        const double k = std::max(0.0, 1.0 - r2 / 2.0);
        d.x += -v * k;
        d.y += u * k;
      }
      if (has({"thin", "shrink", "smaller", "narrow"})) {
        d.x -= u * 0.7;
        d.y -= v * 0.7;
      }
      field.set_control(i, j, {amplitude * d.x, amplitude * d.y});
    }
  }
  return field;
}

nlohmann::json field_to_json(const DeformationField& field) {
  return {{"grid", {field.grid_w(), field.grid_h()}},
          {"cap", field.cap()},
          {"displacements", std::vector<double>(field.parameters().begin(),
                                                field.parameters().end())}};
}

}  // namespace maskforge
