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

#ifndef MASKFORGE_SAMPLES_H_
#define MASKFORGE_SAMPLES_H_

#include <string>
#include <vector>

#include "maskforge/mask.h"

namespace maskforge {

struct SampleMask {
  std::string name;
  BinaryMask mask;
  std::string prompt;
};

// The bundled 64x64 sample set: ten shapes with zero to three holes, each
// with a default editing prompt.
std::vector<SampleMask> sample_masks();

}  // namespace maskforge

#endif  // MASKFORGE_SAMPLES_H_
