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

#ifndef MASKFORGE_PIPELINE_H_
#define MASKFORGE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "maskforge/canny.h"
#include "maskforge/mask.h"
#include "maskforge/rigid.h"
#include "maskforge/schedule.h"
#include "maskforge/trainer.h"

namespace maskforge {

inline constexpr std::string_view kManifestSchema = "maskforge.manifest/1";
inline constexpr std::string_view kBackendStatusSchema = "maskforge.backend_status/1";
inline constexpr std::string_view kConfigSchema = "maskforge.config/1";
inline constexpr std::string_view kVersion = "0.1.0";

struct PipelineConfig {
  std::string dataset_name = "maskforge-synthetic";
  std::filesystem::path source_dir;
  std::filesystem::path prompt_dir;  // optional; <stem>.txt per source mask
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  int rigid_variants = 1;
  int nonrigid_variants = 1;
  int max_rigid_attempts = 16;
  RigidRanges rigid_ranges;
  TrainConfig train;
  CannyParams canny;  // condition edge maps
  std::string backend = "stub";  // "stub" or "external"
  ScheduleConfig schedule;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Paths are emitted as given. output_dir and threads are left out: they do
// not affect any output byte.
nlohmann::json config_snapshot(const PipelineConfig& c);

// Parses a config document; relative paths resolve against `base_dir`.
PipelineConfig pipeline_config_from_json(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

// Writes `bytes` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

struct ConditionBundle {
  std::string id;
  BinaryMask mask;
  EdgeMap canny;
  std::string prompt;
  std::filesystem::path mask_path;
  std::filesystem::path canny_path;
  std::filesystem::path prompt_path;
};

// Writes <id>.mask.png, <id>.canny.png and <id>.prompt.txt into `out_dir`.
// The prompt bytes are written unchanged. Throws kInvalidArgument for an
// empty mask.
ConditionBundle export_conditions(const BinaryMask& mask, std::string_view prompt,
                                  std::string_view id,
                                  const std::filesystem::path& out_dir,
                                  const CannyParams& canny_params = {});

// Runs mask editing, condition export and (for the stub backend) image
// generation, then writes <output_dir>/manifest.json atomically. Returns the
// manifest document.
nlohmann::json run(const PipelineConfig& config);

struct ManifestCheck {
  bool ok = true;
  std::size_t entries = 0;
  std::vector<std::string> problems;
};

// Checks schema, unique ids, file existence, digests, that every canny map
// re-derives from its mask, that non-rigid entries keep the source topology
// and that stub images give the mask back.
ManifestCheck validate_manifest(const std::filesystem::path& manifest_path);

// Built-in handshake backend: renders stub images for every entry without an
// ok image and writes backend_status.json next to the manifest. Returns the
// status document.
nlohmann::json run_stub_backend(const std::filesystem::path& manifest_path,
                                std::uint64_t seed);

// Merges a backend_status document into the manifest (atomically rewritten).
// Returns the number of entries updated; unknown ids throw kInvalidArgument.
std::size_t ingest_backend_status(const std::filesystem::path& manifest_path,
                                  const std::filesystem::path& status_path);

// Cosine similarity between the centroids of two feature sets.
double distribution_report(const std::vector<std::vector<double>>& a,
                           const std::vector<std::vector<double>>& b);

// One vector per non-empty line, comma separated; a non-numeric first line
// is treated as a header.
std::vector<std::vector<double>> read_embeddings_csv(const std::filesystem::path& path);

// Mask files in `dir` (png, pgm), sorted by file name.
std::vector<std::filesystem::path> list_mask_files(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace maskforge

#endif  // MASKFORGE_PIPELINE_H_
