// Copyright 2026 The fene-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fene/error.hpp"

namespace fene {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kPositivityLoss: return "PositivityLoss";
    case ErrorCode::kStabilityViolation: return "StabilityViolation";
    case ErrorCode::kBlowup: return "BlowupCeiling";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kVersion: return "VersionError";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kEigenSolver: return "EigenSolverFailure";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace fene
