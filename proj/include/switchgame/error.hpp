// Copyright 2026 The switchgame Authors
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

#ifndef SWITCHGAME_ERROR_HPP_
#define SWITCHGAME_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace switchgame {

enum class ErrorKind {
  kParse,
  kShape,
  kValidation,
  kDimension,
  kNumerical,
  kProtocol,
  kUsage,
  kUnreachable,
};

// Base for every error raised by the library. `module()` names the component
// that raised it so the CLI can report provenance.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& what)
      : std::runtime_error("[" + module + "] " + what),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

enum class ViolationKind {
  kDimensionMismatch,
  kNotSymmetric,
  kNotPositiveSemidefinite,
  kNotPositiveDefinite,
  kNonpositiveSwitchCost,
  kNonfinite,
};

const char* ToString(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string field;
  std::string detail;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }
  bool Has(ViolationKind kind, const std::string& field) const;

 private:
  std::vector<Violation> violations_;
};

// Raised when the stacked best-response system has no unique solution.
class SingularSystemError : public Error {
 public:
  SingularSystemError(int stage, double reciprocal_condition);

  // -1 when raised outside of a backward pass.
  int stage() const noexcept { return stage_; }
  double reciprocal_condition() const noexcept { return rcond_; }

 private:
  int stage_;
  double rcond_;
};

}  // namespace switchgame

#endif  // SWITCHGAME_ERROR_HPP_
