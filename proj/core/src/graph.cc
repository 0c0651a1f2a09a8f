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

#include "maskforge/graph.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace maskforge {

double StructuralGraph::total_length() const {
  double total = 0.0;
  for (const auto& e : edges) {
    const Point2& a = vertices[e.i];
    const Point2& b = vertices[e.j];
    total += std::hypot(a.x - b.x, a.y - b.y);
  }
  return total;
}

StructuralGraph build_graph(std::span<const Contour> contours) {
  StructuralGraph g;
  for (const Contour& contour : contours) {
    const int n = static_cast<int>(contour.size());
    if (n < 3) {
      throw Error(ErrorCode::kInvalidArgument,
                  "contour needs at least 3 points, got " + std::to_string(n));
    }
    const int base = static_cast<int>(g.vertices.size());
    std::vector<double> lengths(n);
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      const Point2& a = contour[k];
      const Point2& b = contour[(k + 1) % n];
      lengths[k] = std::hypot(a.x - b.x, a.y - b.y);
      total += lengths[k];
    }
    if (total == 0.0) {
      throw Error(ErrorCode::kDegenerate, "all contour points coincide");
    }
    g.vertices.insert(g.vertices.end(), contour.begin(), contour.end());
    for (int k = 0; k < n; ++k) {
      g.edges.push_back({base + k, base + (k + 1) % n, lengths[k] / total});
    }
    g.offsets.push_back(base + n);
  }
  return g;
}

bool same_shape(const StructuralGraph& a, const StructuralGraph& b) {
  return a.offsets == b.offsets && a.edges.size() == b.edges.size();
}

double structure_loss(const StructuralGraph& g, const StructuralGraph& s) {
  if (!same_shape(g, s)) {
    throw Error(ErrorCode::kTopologyMismatch,
                "structural graphs have different contour decompositions");
  }
  double loss = 0.0;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    loss += std::abs(g.edges[k].weight - s.edges[k].weight);
  }
  return loss;
}

GraphFeatures graph_features(const StructuralGraph& g,
                             const TopologySignature& topo) {
  GraphFeatures f{};
  const double edge_count = static_cast<double>(g.edges.size());
  for (int c = 0; c < g.contour_count(); ++c) {
    const int begin = g.offsets[c];
    const int n = g.contour_size(c);
    for (int k = 0; k < n; ++k) {
      const double relative = g.edges[begin + k].weight * n;
      const int bin = std::min(kHistogramBins - 1,
                               static_cast<int>(relative * kHistogramBins / 2.0));
      f[bin] += 1.0 / edge_count;

      const Point2& prev = g.vertices[begin + (k + n - 1) % n];
      const Point2& cur = g.vertices[begin + k];
      const Point2& next = g.vertices[begin + (k + 1) % n];
      const double ax = cur.x - prev.x, ay = cur.y - prev.y;
      const double bx = next.x - cur.x, by = next.y - cur.y;
      const double angle = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
      // Square-root scale resolves small turns; the half-bin offset centres a
      // bin on zero so collinear points do not straddle a bin edge.
      const double u =
          std::copysign(std::sqrt(std::abs(angle) / std::numbers::pi), angle);
      const int abin =
          static_cast<int>(std::floor((u + 1.0) * kHistogramBins / 2.0 + 0.5)) %
          kHistogramBins;
      f[kHistogramBins + abin] += 1.0 / edge_count;
    }
  }
  f[2 * kHistogramBins] = g.contour_count();
  f[2 * kHistogramBins + 1] = topo.holes;
  // Mean edge length keeps this input near zero for typical masks.
  const double length = g.total_length();
  f[2 * kHistogramBins + 2] =
      length > 0.0 ? std::log(length / static_cast<double>(g.edges.size())) : 0.0;
  return f;
}

nlohmann::json graph_to_json(const StructuralGraph& g) {
  nlohmann::json contours = nlohmann::json::array();
  for (int c = 0; c < g.contour_count(); ++c) {
    const int begin = g.offsets[c];
    const int n = g.contour_size(c);
    nlohmann::json vertices = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    for (int k = 0; k < n; ++k) {
      vertices.push_back({g.vertices[begin + k].x, g.vertices[begin + k].y});
      const GraphEdge& e = g.edges[begin + k];
      edges.push_back({e.i - begin, e.j - begin, e.weight});
    }
    contours.push_back({{"vertices", std::move(vertices)},
                        {"edges", std::move(edges)}});
  }
  return {{"contour_count", g.contour_count()},
          {"vertex_count", g.vertices.size()},
          {"contours", std::move(contours)}};
}

}  // namespace maskforge
