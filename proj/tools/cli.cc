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

#include "cli.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "maskforge/canny.h"
#include "maskforge/error.h"
#include "maskforge/graph.h"
#include "maskforge/image_io.h"
#include "maskforge/keypoints.h"
#include "maskforge/metrics.h"
#include "maskforge/pipeline.h"
#include "maskforge/rigid.h"
#include "maskforge/stub_backend.h"
#include "maskforge/trainer.h"

namespace maskforge::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  bool json_errors = false;
};

void report_error(std::ostream& err, const Globals& g, std::string_view code,
                  const std::string& message) {
  if (g.json_errors) {
    err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  } else {
    err << "maskforge: " << message << "\n";
  }
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

// --- single-op commands -----------------------------------------------------

struct InOut {
  std::string in, out;
};

void add_in_out(CLI::App* sub, InOut& io) {
  sub->add_option("--in", io.in, "Input mask")->required();
  sub->add_option("--out", io.out, "Output file")->required();
}

struct RigidArgs {
  InOut io;
  double rotation = 0.0, scale = 1.0, dx = 0.0, dy = 0.0, tilt_x = 0.0, tilt_y = 0.0;
  bool random = false;
  std::string transform_out;
};

int cmd_edit_rigid(const RigidArgs& a, const Globals& g, std::ostream& out) {
  const BinaryMask m = load_mask(a.io.in);
  RigidTransform t;
  if (a.random) {
    t = sample_rigid(g.seed, RigidRanges{});
  } else {
    t.rotation = a.rotation;
    t.scale = a.scale;
    t.dx = a.dx;
    t.dy = a.dy;
    t.tilt_x = a.tilt_x;
    t.tilt_y = a.tilt_y;
  }
  save_mask(rigid_edit(m, t), a.io.out);
  if (!a.transform_out.empty()) write_json(json(t), a.transform_out, out);
  return kOk;
}

struct NonrigidArgs {
  InOut io;
  std::string prompt, prompt_file, config, trace, field_out;
  int steps = -1;
};

int cmd_edit_nonrigid(const NonrigidArgs& a, const Globals& g, std::ostream& out) {
  const BinaryMask m = load_mask(a.io.in);
  TrainConfig tc;
  if (!a.config.empty()) {
    const json j = json::parse(read_text_file(a.config));
    tc = (j.contains("train") ? j.at("train") : j).get<TrainConfig>();
  }
  tc.seed = g.seed;
  tc.variants_per_source = 1;
  if (a.steps >= 0) tc.gen_steps = a.steps;
  const std::string prompt = a.prompt_file.empty() ? a.prompt : read_text_file(a.prompt_file);
  const std::vector<BinaryMask> sources{m};
  const std::vector<std::string> prompts{prompt};
  const TrainResult r = train(sources, prompts, tc);
  save_mask(r.emitted.front(), a.io.out);
  if (!a.trace.empty()) {
    std::ofstream f(a.trace);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + a.trace);
    write_trace_csv(f, r.trace);
  }
  if (!a.field_out.empty()) write_json(field_to_json(r.generators.front().field), a.field_out, out);
  return kOk;
}

struct CannyArgs {
  InOut io;
  CannyParams p;
};

struct GraphArgs {
  std::string in, out;
  int n_v = 64;
  CannyParams p;
};

int cmd_graph_dump(const GraphArgs& a, std::ostream& out) {
  const BinaryMask m = load_mask(a.in);
  const auto contours = extract_keypoints(canny(m, a.p), a.n_v);
  const auto graph = build_graph(contours);
  json j = graph_to_json(graph);
  const auto topo = topology(m);
  j["topology"] = {{"components", topo.components}, {"holes", topo.holes}, {"euler", topo.euler}};
  write_json(j, a.out, out);
  return kOk;
}

// --- pipeline -----------------------------------------------------------------

struct PipelineArgs {
  std::string config, out_dir, ingest, manifest, validate;
  std::optional<std::uint64_t> seed;
};

int cmd_pipeline(const PipelineArgs& a, const Globals& g, std::ostream& out,
                 std::ostream& err) {
  if (!a.ingest.empty()) {
    if (a.manifest.empty()) throw CLI::RequiredError("--manifest");
    const auto n = ingest_backend_status(a.manifest, a.ingest);
    out << json{{"updated", n}}.dump() << "\n";
    return kOk;
  }
  if (!a.validate.empty()) {
    const auto check = validate_manifest(a.validate);
    out << json{{"ok", check.ok}, {"entries", check.entries}, {"problems", check.problems}}.dump(2)
        << "\n";
    if (!check.ok) {
      report_error(err, g, "invalid_manifest",
                   std::to_string(check.problems.size()) + " problem(s) in " + a.validate);
      return kRuntime;
    }
    return kOk;
  }
  if (a.config.empty()) throw CLI::RequiredError("--config");
  PipelineConfig c = load_pipeline_config(a.config);
  if (!a.out_dir.empty()) c.output_dir = a.out_dir;
  c.seed = a.seed.value_or(g.seed);
  const json m = run(c);
  out << json{{"manifest", (c.output_dir / "manifest.json").generic_string()},
              {"entries", m.at("entries").size()}}.dump()
      << "\n";
  return kOk;
}

// --- evaluate / report ---------------------------------------------------------

struct EvaluateArgs {
  std::string pred_dir, gt_dir, out, csv, e_mode = "adaptive";
};

json metric_row(const std::string& id, const MetricReport& r) {
  json j = to_json(r);
  j["id"] = id;
  return j;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  MetricConfig cfg;
  if (a.e_mode == "max") cfg.e_measure_mode = EMeasureMode::kMaxOverThresholds;
  std::map<std::string, fs::path> gt;
  for (const auto& p : list_mask_files(a.gt_dir)) gt[p.stem().string()] = p;
  std::vector<std::pair<std::string, MetricReport>> rows;
  for (const auto& p : list_mask_files(a.pred_dir)) {
    const std::string stem = p.stem().string();
    auto it = gt.find(stem);
    if (it == gt.end()) {
      err << "maskforge: no ground truth for " << stem << ", skipped\n";
      continue;
    }
    rows.emplace_back(stem, evaluate(load_prob_map(p), load_mask(it->second), cfg));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no prediction/ground-truth pairs found");
  }
  std::vector<MetricReport> reports;
  json images = json::array();
  for (const auto& [id, r] : rows) {
    reports.push_back(r);
    images.push_back(metric_row(id, r));
  }
  const MetricReport mean = mean_report(reports);
  json doc = {{"schema", "maskforge.metrics/1"},
              {"count", rows.size()},
              {"e_measure_mode", a.e_mode},
              {"images", images},
              {"mean", to_json(mean)}};
  write_json(doc, a.out, out);
  if (!a.csv.empty()) {
    std::ostringstream s;
    s << std::setprecision(17) << "id,max_f1,weighted_fbeta,mae,s_measure,e_measure\n";
    auto line = [&s](const std::string& id, const MetricReport& r) {
      s << id << ',' << r.max_f1 << ',' << r.weighted_fbeta << ',' << r.mae << ','
        << r.s_measure << ',' << r.e_measure << '\n';
    };
    for (const auto& [id, r] : rows) line(id, r);
    line("mean", mean);
    write_file_atomic(a.csv, s.str());
  }
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> markdown;
  std::string features_a, features_b, out;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  if (!a.features_a.empty() || !a.features_b.empty()) {
    if (a.features_a.empty() || a.features_b.empty()) {
      throw CLI::ValidationError("--features-a and --features-b go together");
    }
    const double cos = distribution_report(read_embeddings_csv(a.features_a),
                                           read_embeddings_csv(a.features_b));
    write_json(json{{"cosine_similarity", cos}}, a.out, out);
    return kOk;
  }
  if (a.markdown.empty()) throw CLI::RequiredError("--markdown or --features-a/--features-b");
  std::ostringstream s;
  s << "| Run | maxF1 ↑ | Fβw ↑ | M ↓ | Sα ↑ | Eφ ↑ |\n";
  s << "|---|---|---|---|---|---|\n";
  s << std::fixed << std::setprecision(3);
  for (const auto& path : a.markdown) {
    const json j = json::parse(read_text_file(path));
    const json& m = j.contains("mean") ? j.at("mean") : j;
    s << "| " << fs::path(path).stem().string() << " | " << m.at("max_f1").get<double>()
      << " | " << m.at("weighted_fbeta").get<double>() << " | "
      << m.at("mae").get<double>() << " | " << m.at("s_measure").get<double>() << " | "
      << m.at("e_measure").get<double>() << " |\n";
  }
  if (a.out.empty() || a.out == "-") {
    out << s.str();
  } else {
    write_file_atomic(a.out, s.str());
  }
  return kOk;
}

struct StubArgs {
  std::string mask, out, manifest;
};

int cmd_stub(const StubArgs& a, const Globals& g, std::ostream& out) {
  if (!a.manifest.empty()) {
    const json status = run_stub_backend(a.manifest, g.seed);
    out << json{{"status", (fs::path(a.manifest).parent_path() / "backend_status.json").generic_string()},
                {"entries", status.at("entries").size()}}.dump()
        << "\n";
    return kOk;
  }
  if (a.mask.empty() || a.out.empty()) throw CLI::RequiredError("--mask and --out (or --manifest)");
  save_rgb(stub_generate(load_mask(a.mask), g.seed), a.out);
  return kOk;
}

void add_canny_options(CLI::App* sub, CannyParams& p) {
  sub->add_option("--low", p.low, "Low hysteresis threshold (fraction of max gradient)");
  sub->add_option("--high", p.high, "High hysteresis threshold");
  sub->add_option("--sigma", p.sigma, "Gaussian sigma");
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Topology-preserving mask editing and dataset synthesis", "maskforge"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("maskforge ") + std::string(kVersion) +
                                        " (config schema " + std::string(kConfigSchema) + ")");
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_flag("--json-errors", g.json_errors, "Print errors as single-line JSON on stderr");

  InOut invert_io;
  auto* invert_cmd = app.add_subcommand("invert", "Flip foreground and background");
  add_in_out(invert_cmd, invert_io);

  RigidArgs rigid;
  auto* rigid_cmd = app.add_subcommand("edit-rigid", "Warp a mask by a rigid transform");
  add_in_out(rigid_cmd, rigid.io);
  rigid_cmd->add_option("--rotation", rigid.rotation, "Radians");
  rigid_cmd->add_option("--scale", rigid.scale);
  rigid_cmd->add_option("--dx", rigid.dx, "Pixels");
  rigid_cmd->add_option("--dy", rigid.dy, "Pixels");
  rigid_cmd->add_option("--tilt-x", rigid.tilt_x);
  rigid_cmd->add_option("--tilt-y", rigid.tilt_y);
  rigid_cmd->add_flag("--random", rigid.random, "Sample the transform from --seed");
  rigid_cmd->add_option("--transform-out", rigid.transform_out, "Write the transform as JSON");

  NonrigidArgs nonrigid;
  auto* nonrigid_cmd = app.add_subcommand("edit-nonrigid", "Adversarially trained deformation");
  add_in_out(nonrigid_cmd, nonrigid.io);
  nonrigid_cmd->add_option("--prompt", nonrigid.prompt, "Editing prompt text");
  nonrigid_cmd->add_option("--prompt-file", nonrigid.prompt_file);
  nonrigid_cmd->add_option("--config", nonrigid.config, "Training config JSON");
  nonrigid_cmd->add_option("--steps", nonrigid.steps, "Generator steps");
  nonrigid_cmd->add_option("--trace", nonrigid.trace, "Write the loss trace as CSV");
  nonrigid_cmd->add_option("--field-out", nonrigid.field_out, "Write the field as JSON");

  CannyArgs canny_args;
  auto* canny_cmd = app.add_subcommand("canny", "Canny edge map of a mask");
  add_in_out(canny_cmd, canny_args.io);
  add_canny_options(canny_cmd, canny_args.p);

  GraphArgs graph_args;
  auto* graph_cmd = app.add_subcommand("graph", "Structural graph utilities");
  graph_cmd->require_subcommand(1);
  auto* dump_cmd = graph_cmd->add_subcommand("dump", "Print the structural graph as JSON");
  dump_cmd->add_option("--in", graph_args.in, "Input mask")->required();
  dump_cmd->add_option("--out", graph_args.out, "Output JSON (default stdout)");
  dump_cmd->add_option("--n-v", graph_args.n_v, "Total key points");
  add_canny_options(dump_cmd, graph_args.p);

  std::string topo_in;
  auto* topo_cmd = app.add_subcommand("topology", "Components, holes and Euler number");
  topo_cmd->add_option("--in", topo_in, "Input mask")->required();

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Run the dataset pipeline");
  pipe_cmd->add_option("--config", pipe.config, "Pipeline config JSON");
  pipe_cmd->add_option("--out", pipe.out_dir, "Override output_dir");
  pipe_cmd->add_option("--ingest-backend", pipe.ingest, "Merge a backend_status.json");
  pipe_cmd->add_option("--manifest", pipe.manifest, "Manifest for --ingest-backend");
  pipe_cmd->add_option("--validate", pipe.validate, "Validate a manifest and exit");

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against ground truth");
  eval_cmd->add_option("--pred-dir", eval.pred_dir)->required();
  eval_cmd->add_option("--gt-dir", eval.gt_dir)->required();
  eval_cmd->add_option("--out", eval.out, "Report JSON")->required();
  eval_cmd->add_option("--csv", eval.csv, "Also write CSV");
  eval_cmd->add_option("--e-mode", eval.e_mode, "E-measure aggregation")
      ->check(CLI::IsMember({"adaptive", "max"}));

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Metric tables and distribution similarity");
  rep_cmd->add_option("--markdown", rep.markdown, "Metric report JSON files");
  rep_cmd->add_option("--features-a", rep.features_a, "Embeddings CSV");
  rep_cmd->add_option("--features-b", rep.features_b, "Embeddings CSV");
  rep_cmd->add_option("--out", rep.out, "Output file (default stdout)");

  StubArgs stub;
  auto* stub_cmd = app.add_subcommand("stub-generate", "Procedural image backend");
  stub_cmd->add_option("--mask", stub.mask);
  stub_cmd->add_option("--out", stub.out);
  stub_cmd->add_option("--manifest", stub.manifest, "Serve a manifest handshake");

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& s : argv) raw.push_back(s.c_str());
  if (raw.empty()) raw.push_back("maskforge");

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, g, "usage", e.what());
    return kUsage;
  }

  try {
    if (invert_cmd->parsed()) {
      save_mask(invert(load_mask(invert_io.in)), invert_io.out);
    } else if (rigid_cmd->parsed()) {
      return cmd_edit_rigid(rigid, g, out);
    } else if (nonrigid_cmd->parsed()) {
      return cmd_edit_nonrigid(nonrigid, g, out);
    } else if (canny_cmd->parsed()) {
      save_mask(canny(load_mask(canny_args.io.in), canny_args.p).pixels, canny_args.io.out);
    } else if (dump_cmd->parsed()) {
      return cmd_graph_dump(graph_args, out);
    } else if (topo_cmd->parsed()) {
      const auto t = topology(load_mask(topo_in));
      out << json{{"components", t.components}, {"holes", t.holes}, {"euler", t.euler}}.dump()
          << "\n";
    } else if (pipe_cmd->parsed()) {
      return cmd_pipeline(pipe, g, out, err);
    } else if (eval_cmd->parsed()) {
      return cmd_evaluate(eval, out, err);
    } else if (rep_cmd->parsed()) {
      return cmd_report(rep, out);
    } else if (stub_cmd->parsed()) {
      return cmd_stub(stub, g, out);
    }
  } catch (const CLI::ParseError& e) {
    report_error(err, g, "usage", e.what());
    return kUsage;
  } catch (const Error& e) {
    report_error(err, g, ErrorCodeName(e.code()), e.what());
    return kRuntime;
  } catch (const json::exception& e) {
    report_error(err, g, "decode", e.what());
    return kRuntime;
  } catch (const std::exception& e) {
    report_error(err, g, "internal", e.what());
    return kRuntime;
  }
  return kOk;
}

}  // namespace maskforge::cli
