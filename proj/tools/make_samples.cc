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

// Writes the bundled sample set: <dir>/samples/*.png, <dir>/prompts/*.txt
// and a pipeline config at <dir>/config.json.

#include <filesystem>
#include <iostream>

#include <nlohmann/json.hpp>

#include "maskforge/error.h"
#include "maskforge/image_io.h"
#include "maskforge/pipeline.h"
#include "maskforge/samples.h"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  if (argc != 2) {
    std::cerr << "usage: make_samples <dir>\n";
    return 1;
  }
  const fs::path dir = argv[1];
  try {
    fs::create_directories(dir / "samples");
    fs::create_directories(dir / "prompts");
    for (const auto& s : maskforge::sample_masks()) {
      maskforge::save_mask(s.mask, dir / "samples" / (s.name + ".png"));
      maskforge::write_file_atomic(dir / "prompts" / (s.name + ".txt"), s.prompt + "\n");
    }
    const nlohmann::json config = {{"dataset_name", "maskforge-samples"},
                                   {"source_dir", "samples"},
                                   {"prompt_dir", "prompts"},
                                   {"output_dir", "out"},
                                   {"seed", 0},
                                   {"rigid_variants", 1},
                                   {"nonrigid_variants", 1},
                                   {"backend", "stub"}};
    maskforge::write_file_atomic(dir / "config.json", config.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "make_samples: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
