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

#include "maskforge/canny.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace maskforge {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable convolution with replicated borders.
std::vector<double> blur(const std::vector<double>& src, int w, int h,
                         double sigma) {
  if (sigma <= 0.0) return src;
  const auto k = gaussian_kernel(sigma);
  const int r = static_cast<int>(k.size() / 2);
  std::vector<double> tmp(src.size());
  std::vector<double> out(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) {
        const int xx = std::clamp(x + i, 0, w - 1);
        acc += k[i + r] * src[static_cast<std::size_t>(y) * w + xx];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) {
        const int yy = std::clamp(y + i, 0, h - 1);
        acc += k[i + r] * tmp[static_cast<std::size_t>(yy) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

EdgeMap canny(const BinaryMask& mask, double low, double high) {
  CannyParams params;
  params.low = low;
  params.high = high;
  return canny(mask, params);
}

EdgeMap canny(const BinaryMask& mask, const CannyParams& params) {
  if (!(params.low >= 0.0 && params.low <= params.high)) {
    throw Error(ErrorCode::kInvalidArgument,
                "canny thresholds must satisfy 0 <= low <= high");
  }
  if (params.sigma < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "canny sigma must be >= 0");
  }
  const int w = mask.width();
  const int h = mask.height();
  const std::size_t n = mask.size();

  std::vector<double> img(n);
  auto data = mask.data();
  for (std::size_t i = 0; i < n; ++i) img[i] = data[i] ? 255.0 : 0.0;
  img = blur(img, w, h, params.sigma);

  auto px = [&](int x, int y) {
    return img[static_cast<std::size_t>(std::clamp(y, 0, h - 1)) * w +
               std::clamp(x, 0, w - 1)];
  };
  std::vector<double> gx(n), gy(n), mag(n);
  double max_mag = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double sx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const double sy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                        (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      gx[i] = sx;
      gy[i] = sy;
      mag[i] = std::hypot(sx, sy);
      max_mag = std::max(max_mag, mag[i]);
    }
  }

  BinaryMask edges(w, h);
  // Tiny residual gradients from the blur are numerical noise, not edges.
  if (max_mag <= 1e-9) return EdgeMap{std::move(edges)};
  for (double& m : mag) m /= max_mag;

  auto m_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };

  // Non-maximum suppression along the quantized gradient direction, oriented
  // towards the brighter side. A symmetric step leaves two pixels with equal
  // magnitude up to rounding; the one on the foreground side survives.
  constexpr double kTie = 1e-9;
  std::vector<double> thin(n, 0.0);
  constexpr double kPi = 3.14159265358979323846;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = mag[i];
      if (m <= 0.0) continue;
      double angle = std::atan2(gy[i], gx[i]);
      if (angle < 0) angle += kPi;
      int dx = 1, dy = 0;
      if (angle < kPi / 8 || angle >= 7 * kPi / 8) {
        dx = 1; dy = 0;
      } else if (angle < 3 * kPi / 8) {
        dx = 1; dy = 1;
      } else if (angle < 5 * kPi / 8) {
        dx = 0; dy = 1;
      } else {
        dx = -1; dy = 1;
      }
      if (dx * gx[i] + dy * gy[i] < 0) {
        dx = -dx;
        dy = -dy;
      }
      const double ahead = m_at(x + dx, y + dy);
      const double behind = m_at(x - dx, y - dy);
      if (m > ahead + kTie && m >= behind - kTie) thin[i] = m;
    }
  }

  std::vector<int> stack;
  for (std::size_t i = 0; i < n; ++i) {
    if (thin[i] >= params.high && thin[i] > 0.0) {
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      if (edges.at(x, y)) continue;
      edges.set(x, y, true);
      stack.push_back(static_cast<int>(i));
      while (!stack.empty()) {
        const int j = stack.back();
        stack.pop_back();
        const int cx = j % w;
        const int cy = j / w;
        for (int ddy = -1; ddy <= 1; ++ddy) {
          for (int ddx = -1; ddx <= 1; ++ddx) {
            const int nx = cx + ddx;
            const int ny = cy + ddy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t k = static_cast<std::size_t>(ny) * w + nx;
            if (!edges.at(nx, ny) && thin[k] >= params.low && thin[k] > 0.0) {
              edges.set(nx, ny, true);
              stack.push_back(static_cast<int>(k));
            }
          }
        }
      }
    }
  }
  return EdgeMap{std::move(edges)};
}

}  // namespace maskforge
