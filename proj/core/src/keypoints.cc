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

#include "maskforge/keypoints.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace maskforge {
namespace {

// Clockwise on screen (y grows downwards), starting at west.
constexpr std::array<std::array<int, 2>, 8> kRing = {{
    {-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1},
}};

int direction_of(int dx, int dy) {
  for (int d = 0; d < 8; ++d) {
    if (kRing[d][0] == dx && kRing[d][1] == dy) return d;
  }
  return -1;
}

double dist(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 == 0.0) return dist(p, a);
  const double t =
      std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

// Moore-neighbour boundary following over the pixels with label `label`.
Contour trace_component(const std::vector<int>& labels, int w, int h,
                        int label, int start) {
  auto inside = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h &&
           labels[static_cast<std::size_t>(y) * w + x] == label;
  };
  const int sx = start % w;
  const int sy = start / w;
  Contour out;
  out.push_back({static_cast<double>(sx), static_cast<double>(sy)});

  int cx = sx, cy = sy;
  int back = 0;  // west of the topmost-leftmost pixel is never inside
  int first_x = -1, first_y = -1;
  const std::size_t limit = 4 * labels.size() + 16;
  for (std::size_t step = 0; step < limit; ++step) {
    int nx = -1, ny = -1, found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int d = (back + k) % 8;
      const int tx = cx + kRing[d][0];
      const int ty = cy + kRing[d][1];
      if (inside(tx, ty)) {
        nx = tx;
        ny = ty;
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    if (cx == sx && cy == sy && step > 0 && nx == first_x && ny == first_y) {
      break;
    }
    if (step == 0) {
      first_x = nx;
      first_y = ny;
    }
    const int pd = (found + 7) % 8;
    const int px = cx + kRing[pd][0];
    const int py = cy + kRing[pd][1];
    back = direction_of(px - nx, py - ny);
    cx = nx;
    cy = ny;
    if (cx == sx && cy == sy) continue;
    out.push_back({static_cast<double>(cx), static_cast<double>(cy)});
  }
  return out;
}

// True when removing the component's pixels leaves some 4-connected region
// unreachable from the border, i.e. the curve encloses something.
bool encloses_region(const std::vector<int>& labels, int w, int h, int label) {
  std::vector<std::uint8_t> seen(labels.size(), 0);
  std::vector<int> stack;
  auto push = [&](int x, int y) {
    const std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (labels[i] == label || seen[i]) return;
    seen[i] = 1;
    stack.push_back(static_cast<int>(i));
  };
  for (int x = 0; x < w; ++x) {
    push(x, 0);
    push(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    push(0, y);
    push(w - 1, y);
  }
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const int x = i % w;
    const int y = i / w;
    if (x > 0) push(x - 1, y);
    if (x < w - 1) push(x + 1, y);
    if (y > 0) push(x, y - 1);
    if (y < h - 1) push(x, y + 1);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != label && !seen[i]) return true;
  }
  return false;
}

void douglas_peucker(const Contour& pts, std::size_t first, std::size_t last,
                     double tolerance, std::vector<std::uint8_t>& keep) {
  std::vector<std::pair<std::size_t, std::size_t>> stack = {{first, last}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    if (b <= a + 1) continue;
    const Point2& pa = pts[a % pts.size()];
    const Point2& pb = pts[b % pts.size()];
    double best = -1.0;
    std::size_t index = a;
    for (std::size_t i = a + 1; i < b; ++i) {
      const double d = segment_distance(pts[i % pts.size()], pa, pb);
      if (d > best) {
        best = d;
        index = i;
      }
    }
    if (best > tolerance) {
      keep[index % pts.size()] = 1;
      stack.push_back({index, b});
      stack.push_back({a, index});
    }
  }
}

double turning_angle(const Point2& prev, const Point2& cur, const Point2& next) {
  const double ax = cur.x - prev.x, ay = cur.y - prev.y;
  const double bx = next.x - cur.x, by = next.y - cur.y;
  return std::atan2(ax * by - ay * bx, ax * bx + ay * by);
}

std::vector<Contour> keypoints_from(std::vector<Contour> traced,
                                    std::span<const int> allocation,
                                    const KeypointOptions& options) {
  std::vector<Contour> out;
  out.reserve(traced.size());
  for (std::size_t c = 0; c < traced.size(); ++c) {
    Contour simple = simplify_closed(traced[c], options.dp_tolerance);
    Contour samples = resample_closed(simple, allocation[c]);
    if (options.snap_corners && simple.size() >= 3) {
      const double spacing = perimeter(simple) / allocation[c];
      std::vector<std::uint8_t> snapped(samples.size(), 0);
      snapped[0] = 1;
      for (std::size_t i = 0; i < simple.size(); ++i) {
        const Point2& corner = simple[i];
        const double turn = turning_angle(
            simple[(i + simple.size() - 1) % simple.size()], corner,
            simple[(i + 1) % simple.size()]);
        if (std::abs(turn) < std::numbers::pi / 6.0) continue;
        std::size_t best = 0;
        double best_d = spacing / 2.0;
        bool any = false;
        for (std::size_t j = 0; j < samples.size(); ++j) {
          const double d = dist(samples[j], corner);
          if (!snapped[j] && d < best_d) {
            best_d = d;
            best = j;
            any = true;
          }
        }
        if (any) {
          samples[best] = corner;
          snapped[best] = 1;
        }
      }
    }
    out.push_back(std::move(samples));
  }
  return out;
}

}  // namespace

double perimeter(const Contour& contour) {
  double total = 0.0;
  for (std::size_t i = 0; i < contour.size(); ++i) {
    total += dist(contour[i], contour[(i + 1) % contour.size()]);
  }
  return total;
}

std::vector<Contour> trace_closed_contours(const EdgeMap& edges) {
  const int w = edges.width();
  const int h = edges.height();
  std::vector<int> labels;
  const int count = label_components(edges.pixels, labels);

  std::vector<int> first_pixel(count + 1, -1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 0 && first_pixel[labels[i]] < 0) {
      first_pixel[labels[i]] = static_cast<int>(i);
    }
  }

  struct Traced {
    Contour points;
    double length;
    int start;
  };
  std::vector<Traced> traced;
  for (int label = 1; label <= count; ++label) {
    if (!encloses_region(labels, w, h, label)) continue;
    Contour c = trace_component(labels, w, h, label, first_pixel[label]);
    if (c.size() < 3) {
      std::clog << "maskforge: dropping closed contour with " << c.size()
                << " traced points\n";
      continue;
    }
    const double len = perimeter(c);
    traced.push_back({std::move(c), len, first_pixel[label]});
  }
  std::stable_sort(traced.begin(), traced.end(),
                   [](const Traced& a, const Traced& b) {
                     if (a.length != b.length) return a.length > b.length;
                     return a.start < b.start;
                   });
  std::vector<Contour> out;
  out.reserve(traced.size());
  for (auto& t : traced) out.push_back(std::move(t.points));
  return out;
}

Contour simplify_closed(const Contour& contour, double tolerance) {
  if (contour.size() < 4 || tolerance <= 0.0) return contour;
  const std::size_t n = contour.size();
  std::size_t far = 0;
  double far_d = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = dist(contour[i], contour[0]);
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }
  std::vector<std::uint8_t> keep(n, 0);
  keep[0] = 1;
  keep[far] = 1;
  douglas_peucker(contour, 0, far, tolerance, keep);
  douglas_peucker(contour, far, n, tolerance, keep);
  Contour out;
  for (std::size_t i = 0; i < n; ++i) {
    if (keep[i]) out.push_back(contour[i]);
  }
  return out;
}

Contour resample_closed(const Contour& polygon, int count) {
  if (count < 1) throw Error(ErrorCode::kInvalidArgument, "resample count < 1");
  if (polygon.empty()) throw Error(ErrorCode::kDegenerate, "empty contour");
  const double total = perimeter(polygon);
  Contour out;
  out.reserve(count);
  out.push_back(polygon[0]);
  if (total == 0.0) {
    for (int i = 1; i < count; ++i) out.push_back(polygon[0]);
    return out;
  }
  const std::size_t n = polygon.size();
  std::size_t seg = 0;
  double seg_start = 0.0;
  double seg_len = dist(polygon[0], polygon[1 % n]);
  for (int k = 1; k < count; ++k) {
    const double target = total * k / count;
    while (seg_start + seg_len < target && seg + 1 < n) {
      seg_start += seg_len;
      ++seg;
      seg_len = dist(polygon[seg], polygon[(seg + 1) % n]);
    }
    const Point2& a = polygon[seg];
    const Point2& b = polygon[(seg + 1) % n];
    const double t =
        seg_len > 0.0 ? std::clamp((target - seg_start) / seg_len, 0.0, 1.0)
                      : 0.0;
    out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  return out;
}

std::vector<int> allocate_vertices(std::span<const double> perimeters,
                                   int total) {
  const int count = static_cast<int>(perimeters.size());
  if (count == 0) throw Error(ErrorCode::kNoContours, "no contours to allocate");
  if (total < 3 * count) {
    throw Error(ErrorCode::kInvalidArgument,
                "n_v=" + std::to_string(total) + " is smaller than 3 x " +
                    std::to_string(count) + " contours");
  }
  const double sum = std::accumulate(perimeters.begin(), perimeters.end(), 0.0);
  std::vector<double> quota(count);
  std::vector<int> alloc(count);
  for (int i = 0; i < count; ++i) {
    quota[i] = sum > 0.0 ? total * perimeters[i] / sum
                         : static_cast<double>(total) / count;
    alloc[i] = std::max(3, static_cast<int>(std::floor(quota[i])));
  }
  int assigned = std::accumulate(alloc.begin(), alloc.end(), 0);
  while (assigned < total) {
    int best = 0;
    for (int i = 1; i < count; ++i) {
      if (quota[i] - alloc[i] > quota[best] - alloc[best]) best = i;
    }
    ++alloc[best];
    ++assigned;
  }
  while (assigned > total) {
    int best = -1;
    for (int i = 0; i < count; ++i) {
      if (alloc[i] <= 3) continue;
      if (best < 0 || quota[i] - alloc[i] < quota[best] - alloc[best]) best = i;
    }
    --alloc[best];
    --assigned;
  }
  return alloc;
}

std::vector<Contour> extract_keypoints(const EdgeMap& edges, int n_v,
                                       const KeypointOptions& options) {
  if (n_v < 3) throw Error(ErrorCode::kInvalidArgument, "n_v must be >= 3");
  auto traced = trace_closed_contours(edges);
  if (traced.empty()) {
    throw Error(ErrorCode::kNoContours, "edge map has no closed contour");
  }
  std::vector<double> lengths;
  for (const auto& c : traced) lengths.push_back(perimeter(c));
  const auto allocation = allocate_vertices(lengths, n_v);
  return keypoints_from(std::move(traced), allocation, options);
}

std::vector<Contour> extract_keypoints(const EdgeMap& edges,
                                       std::span<const int> allocation,
                                       const KeypointOptions& options) {
  auto traced = trace_closed_contours(edges);
  if (traced.empty()) {
    throw Error(ErrorCode::kNoContours, "edge map has no closed contour");
  }
  if (traced.size() != allocation.size()) {
    throw Error(ErrorCode::kTopologyMismatch,
                "contour count " + std::to_string(traced.size()) +
                    " does not match allocation of " +
                    std::to_string(allocation.size()));
  }
  for (int a : allocation) {
    if (a < 3) throw Error(ErrorCode::kInvalidArgument, "allocation below 3");
  }
  return keypoints_from(std::move(traced), allocation, options);
}

}  // namespace maskforge
