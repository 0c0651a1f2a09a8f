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

#include "maskforge/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace maskforge {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const ProbMap& pred, const BinaryMask& gt) {
  require_same_shape(pred.width(), pred.height(), gt.width(), gt.height());
}

void require_foreground(const BinaryMask& gt, const char* metric) {
  if (gt.foreground_count() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(metric) + " is undefined for an empty ground truth");
  }
}

double threshold_at(int k, int levels) {
  return static_cast<double>(k) / static_cast<double>(levels - 1);
}

// Number of grid thresholds strictly below p, so pred > t_k iff k < rank.
int threshold_rank(double p, int levels) {
  int c = std::clamp(static_cast<int>(std::ceil(p * (levels - 1))), 0, levels);
  while (c > 0 && threshold_at(c - 1, levels) >= p) --c;
  while (c < levels && threshold_at(c, levels) < p) ++c;
  return c;
}

double f1_from_counts(std::size_t tp, std::size_t predicted, std::size_t positives) {
  const double precision =
      predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
  const double recall = static_cast<double>(tp) / static_cast<double>(positives);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

// Cumulative per-threshold counts shared by max_f1 and the threshold-swept
// E-measure.
struct ThresholdSweep {
  std::vector<std::size_t> tp;         // true positives at threshold k
  std::vector<std::size_t> predicted;  // predicted positives at threshold k
  std::size_t positives = 0;
};

ThresholdSweep sweep(const ProbMap& pred, const BinaryMask& gt, int levels) {
  std::vector<std::size_t> pos_hist(levels + 1, 0), neg_hist(levels + 1, 0);
  auto p = pred.data();
  auto g = gt.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int r = threshold_rank(p[i], levels);
    (g[i] ? pos_hist : neg_hist)[r]++;
  }
  ThresholdSweep s;
  s.tp.assign(levels, 0);
  s.predicted.assign(levels, 0);
  s.positives = gt.foreground_count();
  // Pixels with rank r are predicted positive at thresholds k < r.
  std::size_t tp = 0, fp = 0;
  for (int k = levels - 1; k >= 0; --k) {
    tp += pos_hist[k + 1];
    fp += neg_hist[k + 1];
    s.tp[k] = tp;
    s.predicted[k] = tp + fp;
  }
  return s;
}

double max_f1_from(const ThresholdSweep& s) {
  double best = 0.0;
  for (std::size_t k = 0; k < s.tp.size(); ++k) {
    best = std::max(best, f1_from_counts(s.tp[k], s.predicted[k], s.positives));
  }
  return best;
}

std::vector<double> gaussian_kernel2d(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size) * size);
  const double half = (size - 1) / 2.0;
  double sum = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x - half, dy = y - half;
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      k[static_cast<std::size_t>(y) * size + x] = v;
      sum += v;
    }
  }
  for (double& v : k) v /= sum;
  return k;
}

// Correlation with zero padding and the kernel centred at floor(size / 2).
std::vector<double> filter_zero_pad(const std::vector<double>& src, int w,
                                    int h, const std::vector<double>& kernel,
                                    int size) {
  std::vector<double> out(src.size(), 0.0);
  const int c = size / 2;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int ky = 0; ky < size; ++ky) {
        const int yy = y + ky - c;
        if (yy < 0 || yy >= h) continue;
        for (int kx = 0; kx < size; ++kx) {
          const int xx = x + kx - c;
          if (xx < 0 || xx >= w) continue;
          acc += kernel[static_cast<std::size_t>(ky) * size + kx] *
                 src[static_cast<std::size_t>(yy) * w + xx];
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

double weighted_fbeta_impl(const ProbMap& pred, const BinaryMask& gt,
                           const DistanceTransform& dt,
                           const MetricConfig& cfg) {
  const int w = gt.width(), h = gt.height();
  auto p = pred.data();
  auto g = gt.data();
  const std::size_t n = p.size();
  std::vector<double> err(n), err_t(n);
  for (std::size_t i = 0; i < n; ++i) err[i] = std::abs(p[i] - g[i]);
  // Background pixels inherit the error of their nearest foreground pixel.
  for (std::size_t i = 0; i < n; ++i) {
    err_t[i] = g[i] ? err[i] : err[static_cast<std::size_t>(dt.nearest[i])];
  }
  const auto kernel = gaussian_kernel2d(cfg.gaussian_kernel, cfg.gaussian_sigma);
  const auto smoothed = filter_zero_pad(err_t, w, h, kernel, cfg.gaussian_kernel);

  const double decay = std::log(0.5) / 5.0;
  double fg_err = 0.0, bg_err = 0.0;
  std::size_t fg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i]) {
      fg_err += (smoothed[i] < err[i]) ? smoothed[i] : err[i];
      ++fg;
    } else {
      bg_err += err[i] * (2.0 - std::exp(decay * dt.distance[i]));
    }
  }
  const double tpw = static_cast<double>(fg) - fg_err;
  const double recall = 1.0 - fg_err / static_cast<double>(fg);
  const double precision = tpw / (kEps + tpw + bg_err);
  const double b2 = cfg.beta_sq_weighted;
  const double q = (1.0 + b2) * (recall * precision) / (kEps + recall + b2 * precision);
  return std::clamp(q, 0.0, 1.0);
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() <= 1) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double object_score(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double mu =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  const double sigma = sample_std(values, mu);
  return 2.0 * mu / (mu * mu + 1.0 + sigma + kEps);
}

double s_object(const ProbMap& pred, const BinaryMask& gt) {
  auto p = pred.data();
  auto g = gt.data();
  std::vector<double> fg, bg;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g[i]) fg.push_back(p[i]);
    else bg.push_back(1.0 - p[i]);
  }
  const double u = static_cast<double>(fg.size()) / static_cast<double>(p.size());
  return u * object_score(fg) + (1.0 - u) * object_score(bg);
}

// SSIM-style similarity of one rectangular block.
double block_ssim(const ProbMap& pred, const BinaryMask& gt, int x0, int y0,
                  int x1, int y1) {
  const double n = static_cast<double>(x1 - x0) * (y1 - y0);
  if (n <= 0) return 0.0;
  double mx = 0.0, my = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      mx += pred.at(x, y);
      my += gt.at(x, y);
    }
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const double a = pred.at(x, y) - mx;
      const double b = gt.at(x, y) - my;
      sxx += a * a;
      syy += b * b;
      sxy += a * b;
    }
  }
  sxx /= (n - 1 + kEps);
  syy /= (n - 1 + kEps);
  sxy /= (n - 1 + kEps);
  const double alpha = 4.0 * mx * my * sxy;
  const double beta = (mx * mx + my * my) * (sxx + syy);
  if (alpha != 0.0) return alpha / (beta + kEps);
  if (beta == 0.0) return 1.0;
  return 0.0;
}

double s_region(const ProbMap& pred, const BinaryMask& gt) {
  const int w = gt.width(), h = gt.height();
  const std::size_t total = gt.foreground_count();
  int cx = 0, cy = 0;
  if (total == 0) {
    cx = static_cast<int>(std::lround(w / 2.0));
    cy = static_cast<int>(std::lround(h / 2.0));
  } else {
    // 1-based centroid, rounded; the split is after column cx / row cy.
    double sx = 0.0, sy = 0.0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (gt.at(x, y)) {
          sx += x + 1;
          sy += y + 1;
        }
      }
    }
    cx = static_cast<int>(std::lround(sx / static_cast<double>(total)));
    cy = static_cast<int>(std::lround(sy / static_cast<double>(total)));
  }
  const double area = static_cast<double>(w) * h;
  const double w1 = static_cast<double>(cx) * cy / area;
  const double w2 = static_cast<double>(w - cx) * cy / area;
  const double w3 = static_cast<double>(cx) * (h - cy) / area;
  const double w4 = 1.0 - w1 - w2 - w3;
  return w1 * block_ssim(pred, gt, 0, 0, cx, cy) +
         w2 * block_ssim(pred, gt, cx, 0, w, cy) +
         w3 * block_ssim(pred, gt, 0, cy, cx, h) +
         w4 * block_ssim(pred, gt, cx, cy, w, h);
}

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double e_measure_impl(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg) {
  auto p = pred.data();
  std::vector<std::uint8_t> bin(p.size());
  if (cfg.e_measure_mode == EMeasureMode::kAdaptive) {
    const double mean = mean_of(p);
    const double th = std::min(2.0 * mean, 1.0);
    for (std::size_t i = 0; i < p.size(); ++i) bin[i] = (mean > 0.0 && p[i] >= th);
    return enhanced_alignment(BinaryMask(gt.width(), gt.height(), std::move(bin)), gt);
  }
  double best = 0.0;
  for (int k = 0; k < cfg.threshold_levels; ++k) {
    const double t = threshold_at(k, cfg.threshold_levels);
    for (std::size_t i = 0; i < p.size(); ++i) bin[i] = p[i] > t;
    best = std::max(best, enhanced_alignment(BinaryMask(gt.width(), gt.height(), bin), gt));
  }
  return best;
}

double s_measure_impl(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg) {
  const double y = static_cast<double>(gt.foreground_count()) /
                   static_cast<double>(gt.size());
  const double mean_pred = mean_of(pred.data());
  if (y == 0.0) return 1.0 - mean_pred;
  if (y == 1.0) return mean_pred;
  const double q = cfg.s_alpha * s_object(pred, gt) +
                   (1.0 - cfg.s_alpha) * s_region(pred, gt);
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace

void MetricConfig::validate() const {
  if (threshold_levels < 2) {
    throw Error(ErrorCode::kInvalidArgument, "threshold_levels must be >= 2");
  }
  if (!(s_alpha >= 0.0 && s_alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "s_alpha must lie in [0, 1]");
  }
  if (gaussian_kernel < 1 || !(gaussian_sigma > 0.0) || beta_sq_weighted < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid weighted-F parameters");
  }
}

DistanceTransform distance_transform(const BinaryMask& features) {
  const int w = features.width(), h = features.height();
  const std::size_t n = features.size();
  DistanceTransform out;
  out.distance.assign(n, kInf);
  out.nearest.assign(n, -1);
  if (features.foreground_count() == 0) return out;

  // Column pass: nearest feature row within each column.
  std::vector<int> row_of(n, -1);
  std::vector<double> g(n, kInf);
  for (int x = 0; x < w; ++x) {
    int last = -1;
    for (int y = 0; y < h; ++y) {
      if (features.at(x, y)) last = y;
      row_of[static_cast<std::size_t>(y) * w + x] = last;
    }
    last = -1;
    for (int y = h - 1; y >= 0; --y) {
      if (features.at(x, y)) last = y;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const int up = row_of[i];
      if (last >= 0 && (up < 0 || last - y < y - up)) row_of[i] = last;
      if (row_of[i] >= 0) {
        const double d = y - row_of[i];
        g[i] = d * d;
      }
    }
  }

  // Row pass: lower envelope of parabolas (Felzenszwalb & Huttenlocher).
  std::vector<int> v(w);
  std::vector<double> z(w + 1);
  for (int y = 0; y < h; ++y) {
    const double* f = g.data() + static_cast<std::size_t>(y) * w;
    int k = -1;
    for (int q = 0; q < w; ++q) {
      if (f[q] == kInf) continue;
      if (k < 0) {
        k = 0;
        v[0] = q;
        z[0] = -kInf;
        z[1] = kInf;
        continue;
      }
      double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                 (2.0 * q - 2.0 * v[k]);
      while (s <= z[k]) {
        --k;
        s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
            (2.0 * q - 2.0 * v[k]);
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
    }
    if (k < 0) continue;  // cannot happen when any feature exists
    k = 0;
    for (int x = 0; x < w; ++x) {
      while (z[k + 1] < x) ++k;
      const int col = v[k];
      const double dx = x - col;
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      out.distance[i] = std::sqrt(dx * dx + f[col]);
      out.nearest[i] = row_of[static_cast<std::size_t>(y) * w + col] * w + col;
    }
  }
  return out;
}

double mae(const ProbMap& pred, const BinaryMask& gt) {
  check_pair(pred, gt);
  auto p = pred.data();
  auto g = gt.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - g[i]);
  return acc / static_cast<double>(p.size());
}

double max_f1(const ProbMap& pred, const BinaryMask& gt, const MetricConfig& cfg) {
  cfg.validate();
  check_pair(pred, gt);
  require_foreground(gt, "max F1");
  return max_f1_from(sweep(pred, gt, cfg.threshold_levels));
}

double weighted_fbeta(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg) {
  cfg.validate();
  check_pair(pred, gt);
  require_foreground(gt, "weighted F-beta");
  return weighted_fbeta_impl(pred, gt, distance_transform(gt), cfg);
}

double s_measure(const ProbMap& pred, const BinaryMask& gt, const MetricConfig& cfg) {
  cfg.validate();
  check_pair(pred, gt);
  return s_measure_impl(pred, gt, cfg);
}

double enhanced_alignment(const BinaryMask& binary_pred, const BinaryMask& gt) {
  require_same_shape(binary_pred.width(), binary_pred.height(), gt.width(),
                     gt.height());
  auto f = binary_pred.data();
  auto g = gt.data();
  const double n = static_cast<double>(g.size());
  const std::size_t fg = gt.foreground_count();
  double sum = 0.0;
  if (fg == 0) {
    for (auto v : f) sum += 1.0 - v;
    return sum / n;
  }
  if (fg == g.size()) {
    for (auto v : f) sum += v;
    return sum / n;
  }
  const double mu_f = static_cast<double>(binary_pred.foreground_count()) / n;
  const double mu_g = static_cast<double>(fg) / n;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double af = f[i] - mu_f;
    const double ag = g[i] - mu_g;
    const double align = 2.0 * (ag * af) / (ag * ag + af * af + kEps);
    sum += (align + 1.0) * (align + 1.0) / 4.0;
  }
  return sum / n;
}

double e_measure(const ProbMap& pred, const BinaryMask& gt, const MetricConfig& cfg) {
  cfg.validate();
  check_pair(pred, gt);
  return e_measure_impl(pred, gt, cfg);
}

MetricReport evaluate(const ProbMap& pred, const BinaryMask& gt,
                      const MetricConfig& cfg) {
  cfg.validate();
  check_pair(pred, gt);
  require_foreground(gt, "evaluate");
  MetricReport r;
  r.mae = mae(pred, gt);
  r.max_f1 = max_f1_from(sweep(pred, gt, cfg.threshold_levels));
  r.weighted_fbeta = weighted_fbeta_impl(pred, gt, distance_transform(gt), cfg);
  r.s_measure = s_measure_impl(pred, gt, cfg);
  r.e_measure = e_measure_impl(pred, gt, cfg);
  return r;
}

nlohmann::json to_json(const MetricReport& r) {
  return {{"max_f1", r.max_f1},
          {"weighted_fbeta", r.weighted_fbeta},
          {"mae", r.mae},
          {"s_measure", r.s_measure},
          {"e_measure", r.e_measure}};
}

MetricReport mean_report(const std::vector<MetricReport>& reports) {
  MetricReport m;
  if (reports.empty()) return m;
  for (const auto& r : reports) {
    m.max_f1 += r.max_f1;
    m.weighted_fbeta += r.weighted_fbeta;
    m.mae += r.mae;
    m.s_measure += r.s_measure;
    m.e_measure += r.e_measure;
  }
  const double n = static_cast<double>(reports.size());
  m.max_f1 /= n;
  m.weighted_fbeta /= n;
  m.mae /= n;
  m.s_measure /= n;
  m.e_measure /= n;
  return m;
}

}  // namespace maskforge
