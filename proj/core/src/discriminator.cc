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

#include "maskforge/discriminator.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace maskforge {
namespace {

double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_input(const DiscriminatorState& d, std::span<const double> f) {
  if (f.size() != static_cast<std::size_t>(kGraphFeatureDim)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "discriminator expects " + std::to_string(kGraphFeatureDim) +
                    " features, got " + std::to_string(f.size()));
  }
  if (d.w1.size() != static_cast<std::size_t>(kGraphFeatureDim) * d.hidden ||
      d.b1.size() != static_cast<std::size_t>(d.hidden) ||
      d.w2.size() != static_cast<std::size_t>(d.hidden)) {
    throw Error(ErrorCode::kDimensionMismatch, "malformed discriminator state");
  }
}

// Hidden activations; returns the output logit.
double hidden_forward(const DiscriminatorState& d, std::span<const double> f,
                      std::vector<double>& act) {
  act.assign(d.b1.begin(), d.b1.end());
  for (int i = 0; i < kGraphFeatureDim; ++i) {
    const double fi = f[i];
    if (fi == 0.0) continue;
    const double* row = d.w1.data() + static_cast<std::size_t>(i) * d.hidden;
    for (int k = 0; k < d.hidden; ++k) act[k] += row[k] * fi;
  }
  double z = d.b2;
  for (int k = 0; k < d.hidden; ++k) {
    act[k] = std::tanh(act[k]);
    z += d.w2[k] * act[k];
  }
  return z;
}

// Accumulates scale * dz/dparams into grad.
void accumulate_logit_gradient(const DiscriminatorState& d,
                               std::span<const double> f,
                               const std::vector<double>& act, double scale,
                               std::vector<double>& grad) {
  const std::size_t w1n = d.w1.size();
  const std::size_t h = static_cast<std::size_t>(d.hidden);
  for (std::size_t k = 0; k < h; ++k) {
    const double dh = scale * d.w2[k] * (1.0 - act[k] * act[k]);
    for (int i = 0; i < kGraphFeatureDim; ++i) {
      grad[static_cast<std::size_t>(i) * h + k] += dh * f[i];
    }
    grad[w1n + k] += dh;
    grad[w1n + h + k] += scale * act[k];
  }
  grad[w1n + 2 * h] += scale;
}

}  // namespace

DiscriminatorState DiscriminatorState::Zero(int hidden) {
  if (hidden < 1) throw Error(ErrorCode::kInvalidArgument, "hidden size < 1");
  DiscriminatorState d;
  d.hidden = hidden;
  d.w1.assign(static_cast<std::size_t>(kGraphFeatureDim) * hidden, 0.0);
  d.b1.assign(hidden, 0.0);
  d.w2.assign(hidden, 0.0);
  return d;
}

DiscriminatorState DiscriminatorState::Random(std::uint64_t seed, int hidden,
                                              double scale) {
  DiscriminatorState d = Zero(hidden);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  for (double& w : d.w1) w = normal(rng);
  for (double& w : d.w2) w = normal(rng);
  return d;
}

std::size_t DiscriminatorState::parameter_count() const noexcept {
  return w1.size() + b1.size() + w2.size() + 1;
}

std::vector<double> DiscriminatorState::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  out.insert(out.end(), w1.begin(), w1.end());
  out.insert(out.end(), b1.begin(), b1.end());
  out.insert(out.end(), w2.begin(), w2.end());
  out.push_back(b2);
  return out;
}

void DiscriminatorState::unflatten(std::span<const double> params) {
  if (params.size() != parameter_count()) {
    throw Error(ErrorCode::kDimensionMismatch, "discriminator parameter count");
  }
  auto it = params.begin();
  std::copy_n(it, w1.size(), w1.begin());
  it += static_cast<std::ptrdiff_t>(w1.size());
  std::copy_n(it, b1.size(), b1.begin());
  it += static_cast<std::ptrdiff_t>(b1.size());
  std::copy_n(it, w2.size(), w2.begin());
  it += static_cast<std::ptrdiff_t>(w2.size());
  b2 = *it;
}

bool DiscriminatorState::all_finite() const {
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return finite(w1) && finite(b1) && finite(w2) && std::isfinite(b2);
}

double disc_logit(const DiscriminatorState& d, std::span<const double> f) {
  check_input(d, f);
  std::vector<double> act;
  return hidden_forward(d, f, act);
}

double disc_forward(const DiscriminatorState& d, std::span<const double> f) {
  return sigmoid(disc_logit(d, f));
}

std::vector<double> disc_forward_gradient(const DiscriminatorState& d,
                                          std::span<const double> f) {
  check_input(d, f);
  std::vector<double> act;
  const double p = sigmoid(hidden_forward(d, f, act));
  std::vector<double> grad(d.parameter_count(), 0.0);
  accumulate_logit_gradient(d, f, act, p * (1.0 - p), grad);
  return grad;
}

double disc_loss(const DiscriminatorState& d,
                 std::span<const GraphFeatures> real,
                 std::span<const GraphFeatures> gen) {
  if (real.empty() || gen.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "discriminator batch is empty");
  }
  double real_term = 0.0;
  for (const auto& f : real) real_term += -softplus(-disc_logit(d, f));
  double gen_term = 0.0;
  for (const auto& f : gen) gen_term += -softplus(disc_logit(d, f));
  return real_term / static_cast<double>(real.size()) +
         gen_term / static_cast<double>(gen.size());
}

std::vector<double> disc_loss_gradient(const DiscriminatorState& d,
                                       std::span<const GraphFeatures> real,
                                       std::span<const GraphFeatures> gen) {
  if (real.empty() || gen.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "discriminator batch is empty");
  }
  std::vector<double> grad(d.parameter_count(), 0.0);
  std::vector<double> act;
  for (const auto& f : real) {
    check_input(d, f);
    const double p = sigmoid(hidden_forward(d, f, act));
    // d/dz log sigmoid(z) = 1 - sigmoid(z)
    accumulate_logit_gradient(d, f, act,
                              (1.0 - p) / static_cast<double>(real.size()), grad);
  }
  for (const auto& f : gen) {
    check_input(d, f);
    const double p = sigmoid(hidden_forward(d, f, act));
    // d/dz log(1 - sigmoid(z)) = -sigmoid(z)
    accumulate_logit_gradient(d, f, act, -p / static_cast<double>(gen.size()),
                              grad);
  }
  return grad;
}

double gen_adversarial_loss(const DiscriminatorState& d,
                            std::span<const GraphFeatures> gen) {
  if (gen.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "generator batch is empty");
  }
  double total = 0.0;
  for (const auto& f : gen) total += -softplus(disc_logit(d, f));
  return total / static_cast<double>(gen.size());
}

double disc_ascent_step(DiscriminatorState& d,
                        std::span<const GraphFeatures> real,
                        std::span<const GraphFeatures> gen,
                        double learning_rate) {
  const double before = disc_loss(d, real, gen);
  if (learning_rate == 0.0) return before;
  const auto grad = disc_loss_gradient(d, real, gen);
  auto params = d.flatten();
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] += learning_rate * grad[i];
  }
  d.unflatten(params);
  return before;
}

double disc_accuracy(const DiscriminatorState& d,
                     std::span<const GraphFeatures> real,
                     std::span<const GraphFeatures> gen) {
  if (real.empty() && gen.empty()) return 0.0;
  std::size_t correct = 0;
  for (const auto& f : real) correct += disc_forward(d, f) > 0.5 ? 1 : 0;
  for (const auto& f : gen) correct += disc_forward(d, f) < 0.5 ? 1 : 0;
  return static_cast<double>(correct) /
         static_cast<double>(real.size() + gen.size());
}

nlohmann::json discriminator_to_json(const DiscriminatorState& d) {
  return {{"hidden", d.hidden}, {"w1", d.w1}, {"b1", d.b1},
          {"w2", d.w2},         {"b2", d.b2}};
}

}  // namespace maskforge
