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

#include "maskforge/pipeline.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "maskforge/digest.h"
#include "maskforge/error.h"
#include "maskforge/image_io.h"
#include "maskforge/losses.h"
#include "maskforge/samples.h"
#include "maskforge/sampling.h"
#include "maskforge/stub_backend.h"

namespace maskforge {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Seed-stream tags.
constexpr std::uint64_t kRigidStream = 0x72696769;
constexpr std::uint64_t kNonrigidStream = 0x6e6f6e72;
constexpr std::uint64_t kImageStream = 0x696d6167;

json canny_json(const CannyParams& c) {
  return {{"sigma", c.sigma}, {"low", c.low}, {"high", c.high}};
}

CannyParams canny_from(const json& j) {
  CannyParams c;
  c.sigma = j.value("sigma", c.sigma);
  c.low = j.value("low", c.low);
  c.high = j.value("high", c.high);
  return c;
}

json topology_json(const TopologySignature& t) {
  return {{"components", t.components}, {"holes", t.holes}, {"euler", t.euler}};
}

TopologySignature topology_from(const json& j) {
  return {j.at("components").get<int>(), j.at("holes").get<int>(),
          j.at("euler").get<int>()};
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

json read_json_file(const fs::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kDecode, path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Prompt for one source: <prompt_dir>/<stem>.txt without its trailing line
// break, else the bundled default for sample names, else empty.
std::string prompt_for(const PipelineConfig& c, const std::string& stem) {
  if (!c.prompt_dir.empty()) {
    const fs::path p = c.prompt_dir / (stem + ".txt");
    if (fs::exists(p)) {
      std::string text = read_text_file(p);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      return text;
    }
  }
  for (const auto& s : sample_masks()) {
    if (s.name == stem) return s.prompt;
  }
  return {};
}

struct SourceJob {
  int index = 0;
  fs::path path;
  std::string stem;
};

struct SourceResult {
  json source;
  std::vector<json> entries;
};

json file_digests(const ConditionBundle& b) {
  return {{"mask", sha256_file(b.mask_path)},
          {"canny", sha256_file(b.canny_path)},
          {"prompt", sha256_file(b.prompt_path)},
          {"image", nullptr}};
}

// Fills image, status and digests for one exported bundle.
void attach_backend(json& entry, const ConditionBundle& bundle,
                    const PipelineConfig& c, std::uint64_t image_seed) {
  entry["backend"] = c.backend;
  entry["sha256"] = file_digests(bundle);
  entry["image"] = nullptr;
  entry["error"] = nullptr;
  if (c.backend != "stub") {
    entry["status"] = "pending";
    return;
  }
  const std::string image_name = bundle.id + ".image.png";
  try {
    save_rgb(stub_generate(bundle.mask, image_seed), c.output_dir / image_name);
    entry["image"] = image_name;
    entry["sha256"]["image"] = sha256_file(c.output_dir / image_name);
    entry["status"] = "ok";
  } catch (const Error& e) {
    entry["status"] = "error";
    entry["error"] = e.what();
  }
}

json make_entry(const ConditionBundle& b, const SourceJob& job,
                std::string_view kind, json edit,
                const TopologySignature& source_topo, double content) {
  json e;
  e["id"] = b.id;
  e["source"] = job.stem;
  e["kind"] = kind;
  e["edit"] = std::move(edit);
  e["mask"] = b.mask_path.filename().string();
  e["canny"] = b.canny_path.filename().string();
  e["prompt"] = b.prompt_path.filename().string();
  e["metrics"] = {{"topology", topology_json(topology(b.mask))},
                  {"source_topology", topology_json(source_topo)},
                  {"content_loss", content}};
  return e;
}

SourceResult run_source(const PipelineConfig& c, const SourceJob& job) {
  SourceResult out;
  const BinaryMask src = load_mask(job.path);
  const TopologySignature src_topo = topology(src);
  const std::string prompt = prompt_for(c, job.stem);
  out.source = {{"id", job.stem},
                {"path", job.path.generic_string()},
                {"sha256", sha256_file(job.path)},
                {"prompt", prompt},
                {"topology", topology_json(src_topo)}};
  const auto idx = static_cast<std::uint64_t>(job.index);

  for (int k = 0; k < c.rigid_variants; ++k) {
    RigidTransform chosen;  // identity unless a sampled transform succeeds
    BinaryMask edited = src;
    int attempts = 0;
    bool sampled = false;
    for (int a = 0; a < c.max_rigid_attempts; ++a) {
      ++attempts;
      const auto t = sample_rigid(
          derive_seed(c.seed, {kRigidStream, idx, static_cast<std::uint64_t>(k),
                               static_cast<std::uint64_t>(a)}),
          c.rigid_ranges);
      try {
        BinaryMask m = rigid_edit(src, t);
        if (topology(m) != src_topo) continue;
        chosen = t;
        edited = std::move(m);
        sampled = true;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEmptyResult &&
            e.code() != ErrorCode::kInvalidArgument &&
            e.code() != ErrorCode::kDegenerate) {
          throw;
        }
        if (e.code() != ErrorCode::kEmptyResult) break;  // source itself unusable
      }
    }
    if (!sampled) {
      std::clog << "maskforge: " << job.stem << " rigid variant " << k
                << " fell back to identity\n";
    }
    const std::string id = job.stem + "_r" + std::to_string(k);
    const auto bundle = export_conditions(edited, prompt, id, c.output_dir, c.canny);
    json edit = {{"type", "rigid"}, {"transform", chosen}, {"attempts", attempts},
                 {"fell_back", !sampled}};
    json entry = make_entry(bundle, job, "rigid", std::move(edit), src_topo,
                            content_loss(edited, src));
    attach_backend(entry, bundle, c,
                   derive_seed(c.seed, {kImageStream, idx, 0, static_cast<std::uint64_t>(k)}));
    out.entries.push_back(std::move(entry));
  }

  if (c.nonrigid_variants > 0) {
    TrainConfig tc = c.train;
    tc.variants_per_source = c.nonrigid_variants;
    tc.seed = derive_seed(c.seed, {kNonrigidStream, idx, c.train.seed});
    const std::vector<BinaryMask> sources{src};
    const std::vector<std::string> prompts{prompt};
    const TrainResult tr = train(sources, prompts, tc);
    const LossReport& last = tr.trace.back().loss;
    for (std::size_t k = 0; k < tr.emitted.size(); ++k) {
      const auto& gen = tr.generators[k];
      const BinaryMask& edited = tr.emitted[k];
      const std::string id = job.stem + "_n" + std::to_string(k);
      const auto bundle = export_conditions(edited, prompt, id, c.output_dir, c.canny);
      json edit = {{"type", "nonrigid"},
                   {"variant", gen.variant},
                   {"noise_seed", gen.noise_seed},
                   {"steps", gen.step},
                   {"field", field_to_json(gen.field)},
                   {"halvings", tr.emitted_halvings[k]},
                   {"final_trace_total", last.total}};
      json entry = make_entry(bundle, job, "nonrigid", std::move(edit), src_topo,
                              content_loss(edited, src));
      attach_backend(entry, bundle, c,
                     derive_seed(c.seed, {kImageStream, idx, 1, k}));
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

void check_nonnegative(int v, const char* name) {
  if (v < 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be >= 0");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (source_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "source_dir is required");
  if (output_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "output_dir is required");
  check_nonnegative(rigid_variants, "rigid_variants");
  check_nonnegative(nonrigid_variants, "nonrigid_variants");
  check_nonnegative(threads, "threads");
  if (max_rigid_attempts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_rigid_attempts must be >= 1");
  }
  if (backend != "stub" && backend != "external") {
    throw Error(ErrorCode::kInvalidArgument,
                "backend must be \"stub\" or \"external\", got \"" + backend + "\"");
  }
  if (!(canny.low >= 0.0 && canny.low <= canny.high) || canny.sigma < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid canny parameters");
  }
  TrainConfig tc = train;
  tc.variants_per_source = std::max(1, nonrigid_variants);
  tc.validate();
  sample_rigid(0, rigid_ranges);  // range validation
  make_schedule(schedule);
}

json config_snapshot(const PipelineConfig& c) {
  TrainConfig tc = c.train;
  tc.variants_per_source = c.nonrigid_variants;
  return {{"schema", kConfigSchema},
          {"dataset_name", c.dataset_name},
          {"source_dir", c.source_dir.generic_string()},
          {"prompt_dir", c.prompt_dir.generic_string()},
          {"seed", c.seed},
          {"rigid_variants", c.rigid_variants},
          {"nonrigid_variants", c.nonrigid_variants},
          {"max_rigid_attempts", c.max_rigid_attempts},
          {"rigid_ranges", c.rigid_ranges},
          {"train", tc},
          {"canny", canny_json(c.canny)},
          {"backend", c.backend},
          {"schedule", c.schedule}};
}

PipelineConfig pipeline_config_from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  PipelineConfig c;
  auto resolve = [&](const char* key) -> fs::path {
    if (!j.contains(key) || j.at(key).get<std::string>().empty()) return {};
    fs::path p = j.at(key).get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return p.lexically_normal();
  };
  try {
    c.dataset_name = j.value("dataset_name", c.dataset_name);
    c.source_dir = resolve("source_dir");
    c.prompt_dir = resolve("prompt_dir");
    c.output_dir = resolve("output_dir");
    c.seed = j.value("seed", c.seed);
    if (j.contains("train")) c.train = j.at("train").get<TrainConfig>();
    c.rigid_variants = j.value("rigid_variants", c.rigid_variants);
    c.nonrigid_variants = j.value("nonrigid_variants", c.train.variants_per_source);
    c.max_rigid_attempts = j.value("max_rigid_attempts", c.max_rigid_attempts);
    if (j.contains("rigid_ranges")) c.rigid_ranges = j.at("rigid_ranges").get<RigidRanges>();
    if (j.contains("canny")) c.canny = canny_from(j.at("canny"));
    c.backend = j.value("backend", c.backend);
    if (j.contains("schedule")) c.schedule = j.at("schedule").get<ScheduleConfig>();
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  c.train.variants_per_source = c.nonrigid_variants;
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  return pipeline_config_from_json(read_json_file(path), path.parent_path());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename onto " + path.string());
  }
}

ConditionBundle export_conditions(const BinaryMask& mask, std::string_view prompt,
                                  std::string_view id, const fs::path& out_dir,
                                  const CannyParams& canny_params) {
  if (mask.foreground_count() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot export an empty mask");
  }
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "bundle id is empty");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string());
  ConditionBundle b{std::string(id), mask, canny(mask, canny_params),
                    std::string(prompt), {}, {}, {}};
  b.mask_path = out_dir / (b.id + ".mask.png");
  b.canny_path = out_dir / (b.id + ".canny.png");
  b.prompt_path = out_dir / (b.id + ".prompt.txt");
  save_mask(b.mask, b.mask_path);
  save_mask(b.canny.pixels, b.canny_path);
  write_file_atomic(b.prompt_path, b.prompt);
  return b;
}

std::vector<fs::path> list_mask_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kNotFound, "not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string ext = lower(e.path().extension().string());
    if (ext == ".png" || ext == ".pgm") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return files;
}

json run(const PipelineConfig& config) {
  config.validate();
  const auto files = list_mask_files(config.source_dir);
  if (files.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no source masks in " + config.source_dir.string());
  }
  std::vector<SourceJob> jobs;
  std::set<std::string> stems;
  for (std::size_t i = 0; i < files.size(); ++i) {
    SourceJob job{static_cast<int>(i), files[i], files[i].stem().string()};
    if (!stems.insert(job.stem).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate source stem " + job.stem);
    }
    jobs.push_back(std::move(job));
  }
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + config.output_dir.string());

  // Each job writes only files prefixed with its own stem; results are merged
  // in source order.
  std::vector<SourceResult> results(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < jobs.size(); i += workers) {
      try {
        results[i] = run_source(config, jobs[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  json manifest;
  manifest["schema"] = kManifestSchema;
  manifest["dataset"] = config.dataset_name;
  manifest["generator"] = {{"name", "maskforge"}, {"version", kVersion}};
  manifest["config"] = config_snapshot(config);
  manifest["sources"] = json::array();
  manifest["entries"] = json::array();
  for (auto& r : results) {
    manifest["sources"].push_back(std::move(r.source));
    for (auto& e : r.entries) manifest["entries"].push_back(std::move(e));
  }
  write_file_atomic(config.output_dir / "manifest.json", dump(manifest));
  return manifest;
}

ManifestCheck validate_manifest(const fs::path& manifest_path) {
  ManifestCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.problems.push_back(std::move(msg));
  };
  json m;
  try {
    m = read_json_file(manifest_path);
  } catch (const Error& e) {
    fail(e.what());
    return check;
  }
  const fs::path dir = manifest_path.parent_path();
  if (m.value("schema", "") != kManifestSchema) fail("unexpected schema");
  if (!m.contains("entries") || !m.at("entries").is_array()) {
    fail("entries missing");
    return check;
  }
  CannyParams cp;
  if (m.contains("config") && m.at("config").contains("canny")) {
    cp = canny_from(m.at("config").at("canny"));
  }
  std::set<std::string> ids;
  for (const auto& e : m.at("entries")) {
    ++check.entries;
    try {
      const std::string id = e.at("id").get<std::string>();
      if (!ids.insert(id).second) fail("duplicate id " + id);
      auto check_file = [&](const char* field) -> bool {
        const fs::path p = dir / e.at(field).get<std::string>();
        if (!fs::exists(p)) {
          fail(id + ": missing " + p.string());
          return false;
        }
        if (sha256_file(p) != e.at("sha256").at(field).get<std::string>()) {
          fail(id + ": digest mismatch for " + field);
          return false;
        }
        return true;
      };
      const bool mask_ok = check_file("mask");
      const bool canny_ok = check_file("canny");
      check_file("prompt");
      const bool has_image = !e.at("image").is_null();
      if (has_image) check_file("image");
      if (!mask_ok) continue;
      const BinaryMask mask = load_mask(dir / e.at("mask").get<std::string>());
      if (canny_ok && !(load_mask(dir / e.at("canny").get<std::string>()) ==
                        canny(mask, cp).pixels)) {
        fail(id + ": canny map does not re-derive from the mask");
      }
      if (e.at("kind") == "nonrigid") {
        const auto& mt = e.at("metrics");
        if (topology(mask) != topology_from(mt.at("source_topology"))) {
          fail(id + ": topology differs from the source");
        }
      }
      if (has_image && e.value("backend", "") == "stub") {
        const RgbImage img = load_rgb(dir / e.at("image").get<std::string>());
        if (img.width != mask.width() || img.height != mask.height()) {
          fail(id + ": image size differs from the mask");
        } else if (iou(recover_mask(img), mask) < 0.99) {
          fail(id + ": stub image does not recover the mask");
        }
      }
    } catch (const json::exception& ex) {
      fail(std::string("malformed entry: ") + ex.what());
    } catch (const Error& ex) {
      fail(ex.what());
    }
  }
  return check;
}

json run_stub_backend(const fs::path& manifest_path, std::uint64_t seed) {
  const json m = read_json_file(manifest_path);
  if (m.value("schema", "") != kManifestSchema) {
    throw Error(ErrorCode::kInvalidArgument, "not a manifest: " + manifest_path.string());
  }
  const fs::path dir = manifest_path.parent_path();
  json status = {{"schema", kBackendStatusSchema},
                 {"backend", "stub"},
                 {"entries", json::object()}};
  std::uint64_t n = 0;
  for (const auto& e : m.at("entries")) {
    ++n;
    const std::string id = e.at("id").get<std::string>();
    if (e.value("status", "") == "ok" && !e.at("image").is_null()) continue;
    const std::string image = id + ".image.png";
    try {
      const BinaryMask mask = load_mask(dir / e.at("mask").get<std::string>());
      save_rgb(stub_generate(mask, derive_seed(seed, {kImageStream, n})), dir / image);
      status["entries"][id] = {{"status", "ok"}, {"message", ""}, {"image", image}};
    } catch (const Error& ex) {
      status["entries"][id] = {{"status", "error"}, {"message", ex.what()}, {"image", nullptr}};
    }
  }
  write_file_atomic(dir / "backend_status.json", dump(status));
  return status;
}

std::size_t ingest_backend_status(const fs::path& manifest_path,
                                  const fs::path& status_path) {
  json m = read_json_file(manifest_path);
  const json s = read_json_file(status_path);
  if (s.value("schema", "") != kBackendStatusSchema || !s.contains("entries") ||
      !s.at("entries").is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a backend status document: " + status_path.string());
  }
  const fs::path dir = manifest_path.parent_path();
  const std::string backend = s.value("backend", "external");
  std::size_t updated = 0;
  for (const auto& [id, result] : s.at("entries").items()) {
    auto it = std::find_if(m["entries"].begin(), m["entries"].end(),
                           [&](const json& e) { return e.at("id") == id; });
    if (it == m["entries"].end()) {
      throw Error(ErrorCode::kInvalidArgument, "status for unknown id " + id);
    }
    json& e = *it;
    const std::string st = result.at("status").get<std::string>();
    e["backend"] = backend;
    if (st == "ok") {
      std::string image = id + ".image.png";
      if (result.contains("image") && result.at("image").is_string()) {
        image = result.at("image").get<std::string>();
      }
      if (!fs::exists(dir / image)) {
        throw Error(ErrorCode::kNotFound, id + ": backend image " + image + " is missing");
      }
      e["image"] = image;
      e["sha256"]["image"] = sha256_file(dir / image);
      e["status"] = "ok";
      e["error"] = nullptr;
    } else if (st == "error") {
      e["image"] = nullptr;
      e["sha256"]["image"] = nullptr;
      e["status"] = "error";
      e["error"] = result.value("message", "backend error");
    } else {
      throw Error(ErrorCode::kInvalidArgument, id + ": unknown status " + st);
    }
    ++updated;
  }
  write_file_atomic(manifest_path, dump(m));
  return updated;
}

double distribution_report(const std::vector<std::vector<double>>& a,
                           const std::vector<std::vector<double>>& b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "feature sets must be non-empty");
  }
  const std::size_t dim = a.front().size();
  auto centroid_of = [dim](const std::vector<std::vector<double>>& set) {
    std::vector<double> c(dim, 0.0);
    for (const auto& v : set) {
      if (v.size() != dim) {
        throw Error(ErrorCode::kDimensionMismatch, "feature dimensions differ");
      }
      for (std::size_t i = 0; i < dim; ++i) c[i] += v[i];
    }
    for (double& x : c) x /= static_cast<double>(set.size());
    return c;
  };
  const auto ca = centroid_of(a);
  const auto cb = centroid_of(b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    dot += ca[i] * cb[i];
    na += ca[i] * ca[i];
    nb += cb[i] * cb[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorCode::kDegenerate, "zero-norm centroid");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<std::vector<double>> read_embeddings_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorCode::kDecode, path.string() + ": non-numeric row");
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace maskforge
