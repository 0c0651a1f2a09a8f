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

#ifndef MASKFORGE_TRAINER_H_
#define MASKFORGE_TRAINER_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/canny.h"
#include "maskforge/deformation.h"
#include "maskforge/discriminator.h"
#include "maskforge/graph.h"
#include "maskforge/keypoints.h"
#include "maskforge/losses.h"
#include "maskforge/mask.h"

namespace maskforge {

struct TrainConfig {
  double lambda1 = kDefaultLambdaContent;
  double lambda2 = kDefaultLambdaStructure;
  int k_d = 2;                   // discriminator steps per generator step
  int disc_warmup = 0;           // discriminator steps before the first evaluation
  double disc_lr = 1e-2;
  double gen_lr = 0.2;           // pixels; largest per-coordinate move per step
  int gen_steps = 30;
  int grid_w = 5;
  int grid_h = 5;
  double cap_fraction = 0.15;    // displacement cap as a fraction of min(W, H)
  int variants_per_source = 5;
  std::uint64_t seed = 0;
  int hidden = 32;
  double disc_init_scale = 0.1;
  double spsa_delta = 0.5;       // pixels
  int spsa_probes = 4;
  double template_fraction = 0.06;  // template amplitude / min(W, H)
  double noise_fraction = 0.02;     // per-control noise std / min(W, H)
  int n_v = 64;
  CannyParams canny;
  KeypointOptions keypoints;

  void validate() const;
};

void to_json(nlohmann::json& j, const TrainConfig& c);
void from_json(const nlohmann::json& j, TrainConfig& c);

// Everything the losses need to know about a mask.
struct MaskStructure {
  BinaryMask mask;
  TopologySignature topo;
  StructuralGraph graph;
  GraphFeatures features{};
  std::vector<int> allocation;
};

// Builds the structural graph of a source mask with the configured n_v.
// Throws kNoContours when the mask has no closed contour.
MaskStructure analyze_source(const BinaryMask& mask, const TrainConfig& config);

// Graph of an edited mask using the source's vertex allocation. Returns
// nullopt when the topology or the contour decomposition differs.
std::optional<MaskStructure> analyze_candidate(const BinaryMask& mask,
                                               const MaskStructure& source,
                                               const TrainConfig& config);

struct GeneratorState {
  DeformationField field;
  std::uint64_t noise_seed = 0;
  std::string prompt;
  int step = 0;
  int source_index = 0;
  int variant = 0;
};

struct TopologyProjection {
  BinaryMask mask;
  DeformationField field;
  int halvings = 0;
  bool fell_back = false;  // true when the source itself was returned
};

// Returns `edited` when its topology matches the source; otherwise halves the
// field and re-applies it to the source up to 8 times, finally falling back to
// the source. The result always has the source's topology.
TopologyProjection project_topology(const BinaryMask& source,
                                    const BinaryMask& edited,
                                    const DeformationField& field);

struct TraceRow {
  int step = 0;
  LossReport loss;
};

struct TrainResult {
  std::vector<GeneratorState> generators;
  DiscriminatorState discriminator;
  std::vector<TraceRow> trace;  // row 0 is the initial evaluation
  std::vector<BinaryMask> emitted;  // one per generator, topology-projected
  std::vector<int> emitted_halvings;
};

// Alternating adversarial optimization: k_d exact-gradient ascent steps on
// the discriminator objective, then one simultaneous-perturbation descent
// step on total loss for every generator. Fully deterministic given the
// config seed. Throws kNoContours for a source without closed contours and
// kNonFinite if a loss row is not finite.
TrainResult train(std::span<const BinaryMask> sources,
                  std::span<const std::string> prompts,
                  const TrainConfig& config);

// Loss of a single generator's field against its source under `d`.
// Returns a report with infinite total for topology-violating candidates.
LossReport candidate_loss(const DeformationField& field,
                          const MaskStructure& source,
                          const DiscriminatorState& d,
                          const TrainConfig& config);

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace maskforge

#endif  // MASKFORGE_TRAINER_H_
