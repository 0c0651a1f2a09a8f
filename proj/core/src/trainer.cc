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

#include "maskforge/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "maskforge/sampling.h"

namespace maskforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxHalvings = 8;

// Stream tags so that the discriminator, field noise and probe draws never
// share random sequences.
constexpr std::uint64_t kDiscStream = 0xD15C;
constexpr std::uint64_t kNoiseStream = 0x2015E;
constexpr std::uint64_t kProbeStream = 0x960BE;

}  // namespace

void TrainConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid train config: " + what);
  };
  if (lambda1 < 0 || lambda2 < 0) fail("lambda1/lambda2 must be >= 0");
  if (k_d < 0) fail("k_d must be >= 0");
  if (disc_warmup < 0) fail("disc_warmup must be >= 0");
  if (disc_lr < 0 || gen_lr < 0) fail("learning rates must be >= 0");
  if (gen_steps < 0) fail("gen_steps must be >= 0");
  if (grid_w < 2 || grid_h < 2) fail("grid must be at least 2x2");
  if (2 * grid_w * grid_h > 50) fail("at most 50 deformation parameters");
  if (!(cap_fraction >= 0 && cap_fraction <= 1)) fail("cap_fraction in [0, 1]");
  if (variants_per_source < 0) fail("variants_per_source must be >= 0");
  if (hidden < 1) fail("hidden must be >= 1");
  if (!(spsa_delta > 0)) fail("spsa_delta must be > 0");
  if (spsa_probes < 1) fail("spsa_probes must be >= 1");
  if (n_v < 3) fail("n_v must be >= 3");
  if (!(canny.low >= 0 && canny.low <= canny.high)) fail("canny thresholds");
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"lambda1", c.lambda1},
       {"lambda2", c.lambda2},
       {"k_d", c.k_d},
       {"disc_warmup", c.disc_warmup},
       {"disc_lr", c.disc_lr},
       {"gen_lr", c.gen_lr},
       {"gen_steps", c.gen_steps},
       {"grid", {c.grid_w, c.grid_h}},
       {"cap_fraction", c.cap_fraction},
       {"variants_per_source", c.variants_per_source},
       {"seed", c.seed},
       {"hidden", c.hidden},
       {"disc_init_scale", c.disc_init_scale},
       {"spsa_delta", c.spsa_delta},
       {"spsa_probes", c.spsa_probes},
       {"template_fraction", c.template_fraction},
       {"noise_fraction", c.noise_fraction},
       {"n_v", c.n_v},
       {"canny", {{"sigma", c.canny.sigma}, {"low", c.canny.low}, {"high", c.canny.high}}},
       {"keypoints", {{"dp_tolerance", c.keypoints.dp_tolerance},
                      {"snap_corners", c.keypoints.snap_corners}}}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  const TrainConfig d;
  c.lambda1 = j.value("lambda1", d.lambda1);
  c.lambda2 = j.value("lambda2", d.lambda2);
  c.k_d = j.value("k_d", d.k_d);
  c.disc_warmup = j.value("disc_warmup", d.disc_warmup);
  c.disc_lr = j.value("disc_lr", d.disc_lr);
  c.gen_lr = j.value("gen_lr", d.gen_lr);
  c.gen_steps = j.value("gen_steps", d.gen_steps);
  if (j.contains("grid")) {
    c.grid_w = j.at("grid").at(0).get<int>();
    c.grid_h = j.at("grid").at(1).get<int>();
  }
  c.cap_fraction = j.value("cap_fraction", d.cap_fraction);
  c.variants_per_source = j.value("variants_per_source", d.variants_per_source);
  c.seed = j.value("seed", d.seed);
  c.hidden = j.value("hidden", d.hidden);
  c.disc_init_scale = j.value("disc_init_scale", d.disc_init_scale);
  c.spsa_delta = j.value("spsa_delta", d.spsa_delta);
  c.spsa_probes = j.value("spsa_probes", d.spsa_probes);
  c.template_fraction = j.value("template_fraction", d.template_fraction);
  c.noise_fraction = j.value("noise_fraction", d.noise_fraction);
  c.n_v = j.value("n_v", d.n_v);
  if (j.contains("canny")) {
    const auto& cj = j.at("canny");
    c.canny.sigma = cj.value("sigma", d.canny.sigma);
    c.canny.low = cj.value("low", d.canny.low);
    c.canny.high = cj.value("high", d.canny.high);
  }
  if (j.contains("keypoints")) {
    const auto& kj = j.at("keypoints");
    c.keypoints.dp_tolerance = kj.value("dp_tolerance", d.keypoints.dp_tolerance);
    c.keypoints.snap_corners = kj.value("snap_corners", d.keypoints.snap_corners);
  }
}

MaskStructure analyze_source(const BinaryMask& mask, const TrainConfig& config) {
  MaskStructure s;
  s.mask = mask;
  s.topo = topology(mask);
  const auto contours =
      extract_keypoints(canny(mask, config.canny), config.n_v, config.keypoints);
  s.graph = build_graph(contours);
  for (int c = 0; c < s.graph.contour_count(); ++c) {
    s.allocation.push_back(s.graph.contour_size(c));
  }
  s.features = graph_features(s.graph, s.topo);
  return s;
}

std::optional<MaskStructure> analyze_candidate(const BinaryMask& mask,
                                               const MaskStructure& source,
                                               const TrainConfig& config) {
  MaskStructure s;
  s.topo = topology(mask);
  if (s.topo != source.topo) return std::nullopt;
  try {
    const auto contours = extract_keypoints(canny(mask, config.canny),
                                            source.allocation, config.keypoints);
    s.graph = build_graph(contours);
  } catch (const Error&) {
    return std::nullopt;
  }
  s.mask = mask;
  s.allocation = source.allocation;
  s.features = graph_features(s.graph, s.topo);
  return s;
}

TopologyProjection project_topology(const BinaryMask& source,
                                    const BinaryMask& edited,
                                    const DeformationField& field) {
  if (source.foreground_count() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "source mask is empty");
  }
  const TopologySignature target = topology(source);
  if (topology(edited) == target) return {edited, field, 0, false};
  DeformationField current = field;
  for (int k = 1; k <= kMaxHalvings; ++k) {
    current = current.scaled(0.5);
    BinaryMask candidate = apply_deformation(source, current);
    if (topology(candidate) == target) {
      return {std::move(candidate), current, k, false};
    }
  }
  return {source,
          DeformationField(field.grid_w(), field.grid_h(), field.cap()),
          kMaxHalvings, true};
}

LossReport candidate_loss(const DeformationField& field,
                          const MaskStructure& source,
                          const DiscriminatorState& d,
                          const TrainConfig& config) {
  const BinaryMask edited = apply_deformation(source.mask, field);
  const auto candidate = analyze_candidate(edited, source, config);
  if (!candidate) {
    LossReport r;
    r.gan = r.content = r.structure = r.total = kInf;
    r.lambda1 = config.lambda1;
    r.lambda2 = config.lambda2;
    return r;
  }
  const GraphFeatures& f = candidate->features;
  const double gan = gen_adversarial_loss(d, std::span(&f, 1));
  return total_loss(gan, content_loss(edited, source.mask),
                    structure_loss(candidate->graph, source.graph),
                    config.lambda1, config.lambda2);
}

namespace {

// Halves an initial field until it yields a valid candidate; zero otherwise.
DeformationField make_valid(DeformationField field, const MaskStructure& source,
                            const TrainConfig& config) {
  for (int k = 0; k <= kMaxHalvings; ++k) {
    if (analyze_candidate(apply_deformation(source.mask, field), source, config)) {
      return field;
    }
    field = field.scaled(0.5);
  }
  return DeformationField(field.grid_w(), field.grid_h(), field.cap());
}

TraceRow mean_row(int step, const std::vector<LossReport>& reports,
                  const TrainConfig& config) {
  double gan = 0, content = 0, structure = 0;
  for (const auto& r : reports) {
    gan += r.gan;
    content += r.content;
    structure += r.structure;
  }
  const double n = static_cast<double>(std::max<std::size_t>(reports.size(), 1));
  return {step, total_loss(gan / n, content / n, structure / n, config.lambda1,
                           config.lambda2)};
}

void spsa_update(GeneratorState& gen, const MaskStructure& source,
                 const DiscriminatorState& d, const TrainConfig& config,
                 int step) {
  const auto theta = gen.field.parameters();
  const std::size_t n = theta.size();
  std::mt19937_64 rng(derive_seed(config.seed,
                                  {kProbeStream,
                                   static_cast<std::uint64_t>(gen.source_index),
                                   static_cast<std::uint64_t>(gen.variant),
                                   static_cast<std::uint64_t>(step)}));
  std::vector<double> grad(n, 0.0);
  std::vector<double> delta(n);
  std::vector<double> probe(n);
  int valid = 0;
  for (int p = 0; p < config.spsa_probes; ++p) {
    for (auto& v : delta) v = (rng() & 1U) ? 1.0 : -1.0;
    DeformationField plus = gen.field;
    DeformationField minus = gen.field;
    for (std::size_t i = 0; i < n; ++i) probe[i] = theta[i] + config.spsa_delta * delta[i];
    plus.set_parameters(probe);
    for (std::size_t i = 0; i < n; ++i) probe[i] = theta[i] - config.spsa_delta * delta[i];
    minus.set_parameters(probe);
    const double fp = candidate_loss(plus, source, d, config).total;
    const double fm = candidate_loss(minus, source, d, config).total;
    if (!std::isfinite(fp) || !std::isfinite(fm)) continue;
    const double slope = (fp - fm) / (2.0 * config.spsa_delta);
    for (std::size_t i = 0; i < n; ++i) grad[i] += slope * delta[i];
    ++valid;
  }
  ++gen.step;
  if (valid == 0 || config.gen_lr == 0.0) return;
  double norm = 0.0;
  for (double& g : grad) {
    g /= valid;
    norm = std::max(norm, std::abs(g));
  }
  if (norm == 0.0) return;
  // Normalized step: the largest coordinate moves by gen_lr pixels. Shrink it
  // when the full step would leave the topology-valid region.
  double lr = config.gen_lr;
  for (int attempt = 0; attempt < 3; ++attempt, lr *= 0.5) {
    for (std::size_t i = 0; i < n; ++i) probe[i] = theta[i] - lr * grad[i] / norm;
    DeformationField next = gen.field;
    next.set_parameters(probe);
    if (std::isfinite(candidate_loss(next, source, d, config).total)) {
      gen.field = std::move(next);
      return;
    }
  }
}

}  // namespace

TrainResult train(std::span<const BinaryMask> sources,
                  std::span<const std::string> prompts,
                  const TrainConfig& config) {
  config.validate();
  if (sources.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "train needs at least one source");
  }
  std::vector<MaskStructure> structures;
  structures.reserve(sources.size());
  for (const auto& s : sources) structures.push_back(analyze_source(s, config));

  TrainResult result;
  result.discriminator = DiscriminatorState::Random(
      derive_seed(config.seed, {kDiscStream}), config.hidden,
      config.disc_init_scale);

  for (std::size_t si = 0; si < sources.size(); ++si) {
    const BinaryMask& src = sources[si];
    const double side = std::min(src.width(), src.height());
    const double cap = default_displacement_cap(src.width(), src.height(),
                                                config.cap_fraction);
    const std::string prompt = prompts.empty() ? std::string()
                                               : prompts[si % prompts.size()];
    for (int v = 0; v < config.variants_per_source; ++v) {
      GeneratorState gen;
      gen.source_index = static_cast<int>(si);
      gen.variant = v;
      gen.prompt = prompt;
      gen.noise_seed = derive_seed(
          config.seed, {kNoiseStream, static_cast<std::uint64_t>(si),
                        static_cast<std::uint64_t>(v)});
      DeformationField field =
          template_field(prompt, config.grid_w, config.grid_h,
                         config.template_fraction * side, cap);
      std::mt19937_64 rng(gen.noise_seed);
      std::normal_distribution<double> noise(0.0, config.noise_fraction * side);
      std::vector<double> params(field.parameters().begin(),
                                 field.parameters().end());
      for (double& p : params) p += noise(rng);
      field.set_parameters(params);
      gen.field = make_valid(std::move(field), structures[si], config);
      result.generators.push_back(std::move(gen));
    }
  }

  auto evaluate_all = [&](int step) {
    std::vector<LossReport> reports;
    reports.reserve(result.generators.size());
    for (const auto& gen : result.generators) {
      reports.push_back(candidate_loss(gen.field, structures[gen.source_index],
                                       result.discriminator, config));
    }
    TraceRow row = mean_row(step, reports, config);
    if (!std::isfinite(row.loss.total)) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite loss at step " + std::to_string(step));
    }
    result.trace.push_back(row);
  };

  if (result.generators.empty()) return result;

  std::vector<GraphFeatures> real;
  for (const auto& s : structures) real.push_back(s.features);
  std::vector<GraphFeatures> fake(result.generators.size());
  auto collect_fakes = [&] {
    for (std::size_t g = 0; g < result.generators.size(); ++g) {
      const auto& gen = result.generators[g];
      const auto& src = structures[gen.source_index];
      const auto candidate = analyze_candidate(
          apply_deformation(src.mask, gen.field), src, config);
      fake[g] = candidate ? candidate->features : src.features;
    }
  };
  auto train_disc = [&](int steps, int step) {
    for (int k = 0; k < steps; ++k) {
      disc_ascent_step(result.discriminator, real, fake, config.disc_lr);
    }
    if (!result.discriminator.all_finite()) {
      throw Error(ErrorCode::kNonFinite,
                  "discriminator diverged at step " + std::to_string(step));
    }
  };

  collect_fakes();
  train_disc(config.disc_warmup, 0);
  evaluate_all(0);

  for (int step = 1; step <= config.gen_steps; ++step) {
    collect_fakes();
    train_disc(config.k_d, step);
    for (auto& gen : result.generators) {
      spsa_update(gen, structures[gen.source_index], result.discriminator,
                  config, step);
    }
    evaluate_all(step);
  }

  for (const auto& gen : result.generators) {
    const BinaryMask& src = sources[gen.source_index];
    auto projected =
        project_topology(src, apply_deformation(src, gen.field), gen.field);
    result.emitted.push_back(std::move(projected.mask));
    result.emitted_halvings.push_back(projected.halvings);
  }
  return result;
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "step,gan,content,structure,total\n";
  out.precision(17);
  for (const auto& row : trace) {
    out << row.step << ',' << row.loss.gan << ',' << row.loss.content << ','
        << row.loss.structure << ',' << row.loss.total << '\n';
  }
}

}  // namespace maskforge
