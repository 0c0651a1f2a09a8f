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

#include "maskforge/losses.h"

namespace maskforge {

double content_loss(const BinaryMask& g, const BinaryMask& s) {
  require_same_shape(g.width(), g.height(), s.width(), s.height());
  auto a = g.data();
  auto b = s.data();
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

LossReport total_loss(double gan, double content, double structure,
                      double lambda1, double lambda2) {
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be >= 0");
  }
  LossReport r;
  r.gan = gan;
  r.content = content;
  r.structure = structure;
  r.lambda1 = lambda1;
  r.lambda2 = lambda2;
  r.total = gan + lambda1 * content + lambda2 * structure;
  return r;
}

}  // namespace maskforge
