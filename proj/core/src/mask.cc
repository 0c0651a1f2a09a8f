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

#include "maskforge/mask.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace maskforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kDecode: return "decode_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kNoContours: return "no_contours";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kEmptyResult: return "empty_result";
    case ErrorCode::kNotInvertible: return "not_invertible";
    case ErrorCode::kTopologyMismatch: return "topology_mismatch";
    case ErrorCode::kNonFinite: return "non_finite";
  }
  return "unknown";
}

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

void require_same_shape(int w1, int h1, int w2, int h2) {
  if (w1 != w2 || h1 != h2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: " + std::to_string(w1) + "x" +
                    std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                    std::to_string(h2));
  }
}

BinaryMask::BinaryMask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  if (fill > 1) throw Error(ErrorCode::kInvalidArgument, "fill must be 0 or 1");
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "mask data length mismatch");
  }
  if (std::any_of(data_.begin(), data_.end(), [](auto v) { return v > 1; })) {
    throw Error(ErrorCode::kInvalidArgument, "mask values must be 0 or 1");
  }
}

std::size_t BinaryMask::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), 1));
}

ProbMap::ProbMap(int width, int height, double fill)
    : ProbMap(width, height,
              std::vector<double>(
                  static_cast<std::size_t>(std::max(width, 0)) *
                      static_cast<std::size_t>(std::max(height, 0)),
                  fill)) {}

ProbMap::ProbMap(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kDimensionMismatch, "probability map length mismatch");
  }
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probability values must lie in [0, 1]");
    }
  }
}

ProbMap ProbMap::FromMask(const BinaryMask& mask) {
  std::vector<double> values(mask.data().begin(), mask.data().end());
  return ProbMap(mask.width(), mask.height(), std::move(values));
}

BinaryMask invert(const BinaryMask& mask) {
  std::vector<std::uint8_t> out(mask.data().begin(), mask.data().end());
  for (auto& v : out) v = static_cast<std::uint8_t>(1 - v);
  return BinaryMask(mask.width(), mask.height(), std::move(out));
}

BinaryMask threshold(const ProbMap& p, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in [0, 1]");
  }
  std::vector<std::uint8_t> out(p.size());
  auto values = p.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values[i] > t ? 1 : 0;
  return BinaryMask(p.width(), p.height(), std::move(out));
}

namespace {

// Generic flood labeling over pixels whose value equals `target`.
int flood_label(const BinaryMask& mask, std::uint8_t target, bool eight,
                std::vector<int>& labels, std::vector<bool>* touches_border) {
  const int w = mask.width();
  const int h = mask.height();
  labels.assign(mask.size(), 0);
  if (touches_border) touches_border->assign(1, false);
  auto values = mask.data();
  std::vector<int> stack;
  int next = 0;
  for (int start = 0; start < static_cast<int>(mask.size()); ++start) {
    if (values[start] != target || labels[start] != 0) continue;
    ++next;
    bool border = false;
    labels[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      const int x = idx % w;
      const int y = idx / w;
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) border = true;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          if (!eight && dx != 0 && dy != 0) continue;
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const int n = ny * w + nx;
          if (values[n] == target && labels[n] == 0) {
            labels[n] = next;
            stack.push_back(n);
          }
        }
      }
    }
    if (touches_border) touches_border->push_back(border);
  }
  return next;
}

}  // namespace

int label_components(const BinaryMask& mask, std::vector<int>& labels) {
  return flood_label(mask, 1, /*eight=*/true, labels, nullptr);
}

TopologySignature topology(const BinaryMask& mask) {
  TopologySignature sig;
  std::vector<int> labels;
  sig.components = flood_label(mask, 1, /*eight=*/true, labels, nullptr);
  std::vector<bool> border;
  const int background = flood_label(mask, 0, /*eight=*/false, labels, &border);
  for (int i = 1; i <= background; ++i) {
    if (!border[i]) ++sig.holes;
  }
  sig.euler = sig.components - sig.holes;
  return sig;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a.width(), a.height(), b.width(), b.height());
  std::size_t inter = 0;
  std::size_t uni = 0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    inter += (da[i] & db[i]);
    uni += (da[i] | db[i]);
  }
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Point2 centroid(const BinaryMask& mask) {
  double sx = 0.0;
  double sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
    }
  }
  if (n == 0) throw Error(ErrorCode::kDegenerate, "centroid of an empty mask");
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

}  // namespace maskforge
