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

#include "switchgame/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace switchgame {
namespace {

using Json = nlohmann::ordered_json;

Error ParseError(const std::string& what) {
  return Error(ErrorKind::kParse, "model", what);
}

const Json& Field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return *it;
}

int ReadDimension(const Json& doc, const char* key) {
  const Json& v = Field(doc, key);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + key + "' must be an integer");
  }
  const auto value = v.get<long long>();
  if (value < 0 || value > 100000) {
    throw ParseError(std::string("field '") + key + "' out of range");
  }
  return static_cast<int>(value);
}

double ReadScalar(const Json& doc, const char* key) {
  const Json& v = Field(doc, key);
  if (!v.is_number()) {
    throw ParseError(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

Matrix ReadMatrix(const Json& doc, const char* key, int rows, int cols) {
  const Json& v = Field(doc, key);
  if (!v.is_array()) {
    throw ParseError(std::string("field '") + key +
                     "' must be a nested array of rows");
  }
  std::size_t entries = 0;
  bool rectangular = v.size() == static_cast<std::size_t>(rows);
  for (const auto& row : v) {
    if (!row.is_array()) {
      throw ParseError(std::string("field '") + key +
                       "' must be a nested array of rows");
    }
    for (const auto& x : row) {
      if (!x.is_number()) {
        throw ParseError(std::string("field '") + key +
                         "' contains a non-numeric entry");
      }
    }
    entries += row.size();
    rectangular = rectangular && row.size() == static_cast<std::size_t>(cols);
  }
  if (!rectangular) {
    std::ostringstream msg;
    msg << "matrix '" << key << "' declared " << rows << "x" << cols << " ("
        << rows * cols << " entries) but has " << entries << " entries in "
        << v.size() << " rows";
    throw Error(ErrorKind::kShape, "model", msg.str());
  }
  Matrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out(r, c) = v[r][c].get<double>();
  }
  return out;
}

Json WriteMatrix(const Matrix& mat) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

class Checker {
 public:
  void Shape(const char* field, const Matrix& mat, int rows, int cols) {
    if (mat.rows() != rows || mat.cols() != cols) {
      std::ostringstream msg;
      msg << "expected " << rows << "x" << cols << ", got " << mat.rows()
          << "x" << mat.cols();
      Add(ViolationKind::kDimensionMismatch, field, msg.str());
      return;
    }
    if (!mat.allFinite()) Add(ViolationKind::kNonfinite, field, "");
  }

  // Symmetric and, depending on `definite`, PSD or PD. Skipped when the
  // shape check already failed.
  void Weight(const char* field, const Matrix& mat, int dim, bool definite) {
    const std::size_t before = violations_.size();
    Shape(field, mat, dim, dim);
    if (violations_.size() != before) return;

    const double asym = (mat - mat.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTolerance) {
      std::ostringstream msg;
      msg << "max |M - M'| = " << asym;
      Add(ViolationKind::kNotSymmetric, field, msg.str());
      return;
    }
    const Matrix sym = 0.5 * (mat + mat.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    std::ostringstream msg;
    msg << "smallest eigenvalue " << lo;
    if (definite && !(lo > kEigenTolerance)) {
      Add(ViolationKind::kNotPositiveDefinite, field, msg.str());
    } else if (!definite && lo < -kEigenTolerance) {
      Add(ViolationKind::kNotPositiveSemidefinite, field, msg.str());
    }
  }

  void SwitchCost(const char* field, double value) {
    if (!std::isfinite(value)) {
      Add(ViolationKind::kNonfinite, field, "");
    } else if (!(value > 0.0)) {
      Add(ViolationKind::kNonpositiveSwitchCost, field,
          "must be strictly positive");
    }
  }

  void Add(ViolationKind kind, const char* field, std::string detail) {
    violations_.push_back({kind, field, std::move(detail)});
  }

  std::vector<Violation> Take() { return std::move(violations_); }

 private:
  std::vector<Violation> violations_;
};

}  // namespace

GameSpec LoadSpec(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("configuration must be a JSON object");
  }

  GameSpec spec;
  spec.n = ReadDimension(doc, "n");
  spec.m = ReadDimension(doc, "m");
  spec.T = ReadDimension(doc, "T");
  const int n = spec.n;
  const int m = spec.m;
  spec.A = ReadMatrix(doc, "A", n, n);
  spec.B1 = ReadMatrix(doc, "B1", n, m);
  spec.B2 = ReadMatrix(doc, "B2", n, m);
  spec.S = ReadMatrix(doc, "S", n, n);
  spec.Sigma0 = ReadMatrix(doc, "Sigma0", n, n);
  spec.Q1 = ReadMatrix(doc, "Q1", n, n);
  spec.Q2 = ReadMatrix(doc, "Q2", n, n);
  spec.Q11 = ReadMatrix(doc, "Q11", m, m);
  spec.Q22 = ReadMatrix(doc, "Q22", m, m);
  spec.Q12 = ReadMatrix(doc, "Q12", m, m);
  spec.Q21 = ReadMatrix(doc, "Q21", m, m);
  spec.lambda1 = ReadScalar(doc, "lambda1");
  spec.lambda2 = ReadScalar(doc, "lambda2");
  return spec;
}

GameSpec LoadSpecFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open configuration file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadSpec(buf.str());
}

std::string DumpSpec(const GameSpec& spec) {
  Json doc;
  doc["n"] = spec.n;
  doc["m"] = spec.m;
  doc["T"] = spec.T;
  doc["A"] = WriteMatrix(spec.A);
  doc["B1"] = WriteMatrix(spec.B1);
  doc["B2"] = WriteMatrix(spec.B2);
  doc["S"] = WriteMatrix(spec.S);
  doc["Sigma0"] = WriteMatrix(spec.Sigma0);
  doc["Q1"] = WriteMatrix(spec.Q1);
  doc["Q2"] = WriteMatrix(spec.Q2);
  doc["Q11"] = WriteMatrix(spec.Q11);
  doc["Q22"] = WriteMatrix(spec.Q22);
  doc["Q12"] = WriteMatrix(spec.Q12);
  doc["Q21"] = WriteMatrix(spec.Q21);
  doc["lambda1"] = spec.lambda1;
  doc["lambda2"] = spec.lambda2;
  return doc.dump(2) + "\n";
}

ValidatedSpec ValidateSpec(GameSpec spec) {
  Checker check;
  if (spec.n <= 0) {
    check.Add(ViolationKind::kDimensionMismatch, "n", "must be positive");
  }
  if (spec.m <= 0) {
    check.Add(ViolationKind::kDimensionMismatch, "m", "must be positive");
  }
  if (spec.T < 0) {
    check.Add(ViolationKind::kDimensionMismatch, "T", "must be nonnegative");
  }
  const int n = spec.n;
  const int m = spec.m;
  check.Shape("A", spec.A, n, n);
  check.Shape("B1", spec.B1, n, m);
  check.Shape("B2", spec.B2, n, m);
  check.Weight("S", spec.S, n, false);
  check.Weight("Sigma0", spec.Sigma0, n, false);
  check.Weight("Q1", spec.Q1, n, false);
  check.Weight("Q2", spec.Q2, n, false);
  check.Weight("Q11", spec.Q11, m, true);
  check.Weight("Q22", spec.Q22, m, true);
  check.Weight("Q12", spec.Q12, m, false);
  check.Weight("Q21", spec.Q21, m, false);
  check.SwitchCost("lambda1", spec.lambda1);
  check.SwitchCost("lambda2", spec.lambda2);

  auto violations = check.Take();
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return ValidatedSpec(std::move(spec));
}

}  // namespace switchgame
