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

#ifndef FENE_ERROR_HPP
#define FENE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fene {

/// Machine-readable failure categories. The numeric values double as process
/// exit codes and as the C API status codes, so they must stay stable.
enum class ErrorCode : int {
  kOk = 0,
  kConfig = 2,
  kPositivityLoss = 3,
  kStabilityViolation = 4,
  kBlowup = 5,
  kIo = 6,
  kVersion = 7,
  kDomain = 8,
  kSizeMismatch = 9,
  kEigenSolver = 10,
  kInternal = 11,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kDomain, what) {}
};

class SizeMismatch : public Error {
 public:
  explicit SizeMismatch(const std::string& what)
      : Error(ErrorCode::kSizeMismatch, what) {}
};

/// min r <= 0 after a fluid update.
class PositivityLoss : public Error {
 public:
  explicit PositivityLoss(const std::string& what)
      : Error(ErrorCode::kPositivityLoss, what) {}
};

/// Time step above the stability (CFL) bound of the chosen scheme.
class StabilityViolation : public Error {
 public:
  explicit StabilityViolation(const std::string& what)
      : Error(ErrorCode::kStabilityViolation, what) {}
};

class BlowupCeiling : public Error {
 public:
  explicit BlowupCeiling(const std::string& what) : Error(ErrorCode::kBlowup, what) {}
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : Error(ErrorCode::kConfig, what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class VersionError : public Error {
 public:
  explicit VersionError(const std::string& what) : Error(ErrorCode::kVersion, what) {}
};

class EigenSolverFailure : public Error {
 public:
  explicit EigenSolverFailure(const std::string& what)
      : Error(ErrorCode::kEigenSolver, what) {}
};

}  // namespace fene

#endif  // FENE_ERROR_HPP
