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

#ifndef MASKFORGE_LOSSES_H_
#define MASKFORGE_LOSSES_H_

#include "maskforge/mask.h"

namespace maskforge {

inline constexpr double kDefaultLambdaContent = 0.8;
inline constexpr double kDefaultLambdaStructure = 0.5;

// Mean per-pixel absolute difference; in [0, 1].
double content_loss(const BinaryMask& g, const BinaryMask& s);

struct LossReport {
  double gan = 0.0;
  double content = 0.0;
  double structure = 0.0;
  double total = 0.0;
  double lambda1 = kDefaultLambdaContent;
  double lambda2 = kDefaultLambdaStructure;
};

// total = gan + lambda1 * content + lambda2 * structure. Throws
// kInvalidArgument for negative weights.
LossReport total_loss(double gan, double content, double structure,
                      double lambda1 = kDefaultLambdaContent,
                      double lambda2 = kDefaultLambdaStructure);

}  // namespace maskforge

#endif  // MASKFORGE_LOSSES_H_
