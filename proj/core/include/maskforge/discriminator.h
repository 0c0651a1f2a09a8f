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

#ifndef MASKFORGE_DISCRIMINATOR_H_
#define MASKFORGE_DISCRIMINATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/graph.h"

namespace maskforge {

// Two-layer perceptron over graph features:
//   D(f) = sigmoid(w2 . tanh(W1^T f + b1) + b2).
// W1 is stored input-major: w1[i * hidden + k] connects input i to unit k.
struct DiscriminatorState {
  int hidden = 32;
  std::vector<double> w1;
  std::vector<double> b1;
  std::vector<double> w2;
  double b2 = 0.0;

  static DiscriminatorState Zero(int hidden = 32);
  // Weights ~ N(0, scale^2), biases zero.
  static DiscriminatorState Random(std::uint64_t seed, int hidden = 32,
                                   double scale = 0.1);

  std::size_t parameter_count() const noexcept;
  // Order: w1, b1, w2, b2.
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> params);
  bool all_finite() const;
};

double disc_logit(const DiscriminatorState& d, std::span<const double> f);

// Output in (0, 1). Throws kDimensionMismatch unless f has kGraphFeatureDim
// entries.
double disc_forward(const DiscriminatorState& d, std::span<const double> f);

// Gradient of D(f) with respect to the flattened parameters.
std::vector<double> disc_forward_gradient(const DiscriminatorState& d,
                                          std::span<const double> f);

// mean log D(real) + mean log(1 - D(gen)); the discriminator ascends this.
// Throws kInvalidArgument when either batch is empty.
double disc_loss(const DiscriminatorState& d,
                 std::span<const GraphFeatures> real,
                 std::span<const GraphFeatures> gen);

// Exact gradient of disc_loss with respect to the flattened parameters.
std::vector<double> disc_loss_gradient(const DiscriminatorState& d,
                                       std::span<const GraphFeatures> real,
                                       std::span<const GraphFeatures> gen);

// mean log(1 - D(gen)); the generator term of the adversarial objective.
double gen_adversarial_loss(const DiscriminatorState& d,
                            std::span<const GraphFeatures> gen);

// One gradient-ascent step on disc_loss; returns the objective before the
// update.
double disc_ascent_step(DiscriminatorState& d,
                        std::span<const GraphFeatures> real,
                        std::span<const GraphFeatures> gen,
                        double learning_rate);

// Fraction of samples on the correct side of 0.5 (real above, gen below).
double disc_accuracy(const DiscriminatorState& d,
                     std::span<const GraphFeatures> real,
                     std::span<const GraphFeatures> gen);

nlohmann::json discriminator_to_json(const DiscriminatorState& d);

}  // namespace maskforge

#endif  // MASKFORGE_DISCRIMINATOR_H_
