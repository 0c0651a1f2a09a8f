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

#ifndef MASKFORGE_KEYPOINTS_H_
#define MASKFORGE_KEYPOINTS_H_

#include <span>
#include <vector>

#include "maskforge/canny.h"
#include "maskforge/mask.h"

namespace maskforge {

// Ordered closed polyline; the closing segment back to point 0 is implicit.
using Contour = std::vector<Point2>;

struct KeypointOptions {
  // Douglas-Peucker tolerance in pixels applied before resampling.
  double dp_tolerance = 0.75;
  // Move resampled points onto nearby polygon corners.
  bool snap_corners = false;
};

// Traces every closed 8-connected edge curve along its outer side, clockwise
// on screen, starting at its topmost-then-leftmost pixel. Contours are sorted
// by descending perimeter (ties by start row, then column).
std::vector<Contour> trace_closed_contours(const EdgeMap& edges);

double perimeter(const Contour& contour);

// Douglas-Peucker simplification of a closed contour; point 0 is retained.
Contour simplify_closed(const Contour& contour, double tolerance);

// `count` points at equal arc-length spacing starting at point 0.
Contour resample_closed(const Contour& polygon, int count);

// Splits `total` vertices across contours in proportion to their perimeters
// (largest remainder), with at least 3 per contour.
std::vector<int> allocate_vertices(std::span<const double> perimeters,
                                   int total);

// Key points for a structural graph. Throws kNoContours when the edge map has
// no closed contour and kInvalidArgument when n_v < 3 * contour count.
std::vector<Contour> extract_keypoints(const EdgeMap& edges, int n_v,
                                       const KeypointOptions& options = {});

// Same, with an explicit per-contour allocation (used to make an edited mask's
// graph index-compatible with its source). Throws kTopologyMismatch when the
// contour count differs from the allocation size.
std::vector<Contour> extract_keypoints(const EdgeMap& edges,
                                       std::span<const int> allocation,
                                       const KeypointOptions& options = {});

}  // namespace maskforge

#endif  // MASKFORGE_KEYPOINTS_H_
