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

#ifndef MASKFORGE_ERROR_H_
#define MASKFORGE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace maskforge {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotFound,
  kDecode,
  kIo,
  kNoContours,
  kDegenerate,
  kEmptyResult,
  kNotInvertible,
  kTopologyMismatch,
  kNonFinite,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code is
// stable and is what the CLI emits in machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maskforge

#endif  // MASKFORGE_ERROR_H_
