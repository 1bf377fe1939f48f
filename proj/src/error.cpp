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

#include "switchgame/error.hpp"

#include <cstdio>

namespace switchgame {

const char* ToString(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDimensionMismatch:
      return "dimension mismatch";
    case ViolationKind::kNotSymmetric:
      return "not symmetric";
    case ViolationKind::kNotPositiveSemidefinite:
      return "not positive semidefinite";
    case ViolationKind::kNotPositiveDefinite:
      return "not positive definite";
    case ViolationKind::kNonpositiveSwitchCost:
      return "nonpositive switch cost";
    case ViolationKind::kNonfinite:
      return "non-finite entry";
  }
  return "unknown violation";
}

namespace {

std::string Summarize(const std::vector<Violation>& violations) {
  std::string out = "invalid game specification:";
  for (const auto& v : violations) {
    out += " " + v.field + ": " + ToString(v.kind);
    if (!v.detail.empty()) out += " (" + v.detail + ")";
    out += ";";
  }
  return out;
}

std::string DescribeSingular(int stage, double rcond) {
  char buf[160];
  if (stage >= 0) {
    std::snprintf(buf, sizeof(buf),
                  "stacked best-response system singular at stage %d "
                  "(reciprocal condition %.3e)",
                  stage, rcond);
  } else {
    std::snprintf(buf, sizeof(buf),
                  "stacked best-response system singular (reciprocal "
                  "condition %.3e)",
                  rcond);
  }
  return buf;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorKind::kValidation, "model", Summarize(violations)),
      violations_(std::move(violations)) {}

bool ValidationError::Has(ViolationKind kind, const std::string& field) const {
  for (const auto& v : violations_) {
    if (v.kind == kind && v.field == field) return true;
  }
  return false;
}

SingularSystemError::SingularSystemError(int stage, double reciprocal_condition)
    : Error(ErrorKind::kNumerical, "riccati",
            DescribeSingular(stage, reciprocal_condition)),
      stage_(stage),
      rcond_(reciprocal_condition) {}

}  // namespace switchgame
