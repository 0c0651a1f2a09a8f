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

#ifndef MASKFORGE_MASK_H_
#define MASKFORGE_MASK_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maskforge/error.h"

namespace maskforge {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// H x W binary grid stored row-major; every element is 0 or 1.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::uint8_t fill = 0);
  // Takes ownership of `data`; throws if the size or any value is invalid.
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  void set(int x, int y, bool value) { data_[index(x, y)] = value ? 1 : 0; }
  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  // Out-of-frame reads return 0.
  std::uint8_t get_or_zero(int x, int y) const noexcept {
    return contains(x, y) ? data_[index(x, y)] : 0;
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::size_t foreground_count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// H x W grid of probabilities in [0, 1]; prediction maps for the metrics.
class ProbMap {
 public:
  ProbMap() = default;
  ProbMap(int width, int height, double fill = 0.0);
  ProbMap(int width, int height, std::vector<double> data);

  static ProbMap FromMask(const BinaryMask& mask);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  double at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Components are 8-connected foreground regions; holes are 4-connected
// background regions that do not touch the image border.
struct TopologySignature {
  int components = 0;
  int holes = 0;
  int euler = 0;

  friend bool operator==(const TopologySignature&,
                         const TopologySignature&) = default;
};

BinaryMask invert(const BinaryMask& mask);

// output[i] = 1 iff p[i] > t. Throws kInvalidArgument if t is outside [0, 1].
BinaryMask threshold(const ProbMap& p, double t);

TopologySignature topology(const BinaryMask& mask);

// |a & b| / |a | b|, defined as 1 when both masks are empty.
double iou(const BinaryMask& a, const BinaryMask& b);

// Mean foreground position in pixel coordinates. Throws kDegenerate on an
// empty mask.
Point2 centroid(const BinaryMask& mask);

// Labels 8-connected foreground components; returns the label count and
// fills `labels` with 0 for background and 1..n for each component.
int label_components(const BinaryMask& mask, std::vector<int>& labels);

void require_same_shape(int w1, int h1, int w2, int h2);

}  // namespace maskforge

#endif  // MASKFORGE_MASK_H_
