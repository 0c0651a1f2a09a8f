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

#ifndef MASKFORGE_GRAPH_H_
#define MASKFORGE_GRAPH_H_

#include <array>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/keypoints.h"
#include "maskforge/mask.h"

namespace maskforge {

struct GraphEdge {
  int i = 0;
  int j = 0;
  // Segment length divided by the total length of its contour.
  double weight = 0.0;
};

// Cycle graph over contour key points. Vertices of contour c occupy
// [offsets[c], offsets[c + 1]); edges follow the same contour order, one per
// vertex, the last closing the cycle.
struct StructuralGraph {
  std::vector<Point2> vertices;
  std::vector<int> offsets = {0};
  std::vector<GraphEdge> edges;

  int contour_count() const noexcept {
    return static_cast<int>(offsets.size()) - 1;
  }
  int contour_size(int c) const { return offsets[c + 1] - offsets[c]; }
  // Total length of all contours, in pixels.
  double total_length() const;
};

// Throws kInvalidArgument for contours with < 3 points and kDegenerate when
// all points of a contour coincide.
StructuralGraph build_graph(std::span<const Contour> contours);

// L1 distance between corresponding edge weights. Throws kTopologyMismatch
// when the contour decompositions differ.
double structure_loss(const StructuralGraph& g, const StructuralGraph& s);

bool same_shape(const StructuralGraph& a, const StructuralGraph& b);

inline constexpr int kHistogramBins = 16;
inline constexpr int kGraphFeatureDim = 2 * kHistogramBins + 3;

// [0, 16): histogram of edge weights relative to the uniform weight of their
// contour; [16, 32): histogram of signed turning angles on a square-root
// scale; then contour count, hole count and log mean edge length.
using GraphFeatures = std::array<double, kGraphFeatureDim>;

GraphFeatures graph_features(const StructuralGraph& g,
                             const TopologySignature& topo);

// {"contours": [{"vertices": [[x, y], ...], "edges": [[i, j, w], ...]}]}
// with vertex indices local to each contour.
nlohmann::json graph_to_json(const StructuralGraph& g);

}  // namespace maskforge

#endif  // MASKFORGE_GRAPH_H_
