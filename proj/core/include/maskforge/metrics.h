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

#ifndef MASKFORGE_METRICS_H_
#define MASKFORGE_METRICS_H_

#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/mask.h"

namespace maskforge {

enum class EMeasureMode {
  kAdaptive,            // binarize at min(2 * mean(pred), 1)
  kMaxOverThresholds,   // best score over the threshold grid
};

struct MetricConfig {
  int threshold_levels = 256;
  double beta_sq_weighted = 1.0;
  double s_alpha = 0.5;
  double gaussian_sigma = 5.0;
  int gaussian_kernel = 7;
  EMeasureMode e_measure_mode = EMeasureMode::kAdaptive;

  void validate() const;
};

struct MetricReport {
  double max_f1 = 0.0;
  double weighted_fbeta = 0.0;
  double mae = 0.0;
  double s_measure = 0.0;
  double e_measure = 0.0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Mean absolute error.
double mae(const ProbMap& pred, const BinaryMask& gt);

// Maximum F1 over thresholds k / (L - 1), binarizing pred > t. Throws
// kInvalidArgument for an empty ground truth.
double max_f1(const ProbMap& pred, const BinaryMask& gt,
              const MetricConfig& cfg = {});

// Weighted F-measure (Margolin et al.): dependency-smoothed error map with
// distance-decaying background importance. Throws kInvalidArgument for an
// empty ground truth.
double weighted_fbeta(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg = {});

// Structure measure (Fan et al.): alpha * object + (1 - alpha) * region.
// All-background gt gives 1 - mean(pred); all-foreground gt gives mean(pred).
double s_measure(const ProbMap& pred, const BinaryMask& gt,
                 const MetricConfig& cfg = {});

// Enhanced-alignment measure (Fan et al.).
double e_measure(const ProbMap& pred, const BinaryMask& gt,
                 const MetricConfig& cfg = {});

// Enhanced alignment of an already binarized prediction; mean over pixels.
double enhanced_alignment(const BinaryMask& binary_pred, const BinaryMask& gt);

MetricReport evaluate(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg = {});

// Exact Euclidean distance transform: for each pixel, the distance to the
// nearest pixel with value 1 and that pixel's index. Infinite distance and
// index -1 when the mask has no foreground.
struct DistanceTransform {
  std::vector<double> distance;
  std::vector<int> nearest;
};
DistanceTransform distance_transform(const BinaryMask& features);

nlohmann::json to_json(const MetricReport& r);

// Field-wise arithmetic mean.
MetricReport mean_report(const std::vector<MetricReport>& reports);

}  // namespace maskforge

#endif  // MASKFORGE_METRICS_H_
