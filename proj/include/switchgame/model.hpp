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

#ifndef SWITCHGAME_MODEL_HPP_
#define SWITCHGAME_MODEL_HPP_

#include <Eigen/Dense>
#include <string>
#include <string_view>

#include "switchgame/error.hpp"

namespace switchgame {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Player { kOne = 0, kTwo = 1 };

inline int Index(Player p) { return static_cast<int>(p); }
inline Player Other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

// Parameters of a finite-horizon two-player LQ game with a shared, costly
// measurement switch. Stages run 0..T; controls act at 0..T-1.
struct GameSpec {
  int n = 0;  // state dimension
  int m = 0;  // per-player control dimension
  int T = 0;  // horizon

  Matrix A;       // n x n
  Matrix B1, B2;  // n x m
  Matrix S;       // process-noise covariance
  Matrix Sigma0;  // initial-state covariance (zero mean)

  Matrix Q1, Q2;    // state weights
  Matrix Q11, Q22;  // own-control weights
  Matrix Q12, Q21;  // Qij weighs player j's control in player i's cost

  double lambda1 = 0.0;
  double lambda2 = 0.0;

  const Matrix& B(Player p) const { return p == Player::kOne ? B1 : B2; }
  const Matrix& Q(Player p) const { return p == Player::kOne ? Q1 : Q2; }
  // Weight on player p's own control.
  const Matrix& Own(Player p) const { return p == Player::kOne ? Q11 : Q22; }
  // Weight on the opponent's control inside player p's cost.
  const Matrix& Cross(Player p) const { return p == Player::kOne ? Q12 : Q21; }
  double lambda(Player p) const {
    return p == Player::kOne ? lambda1 : lambda2;
  }
};

// A GameSpec that has passed ValidateSpec. Only ValidateSpec constructs one.
class ValidatedSpec {
 public:
  const GameSpec& spec() const noexcept { return spec_; }
  const GameSpec* operator->() const noexcept { return &spec_; }
  const GameSpec& operator*() const noexcept { return spec_; }

 private:
  friend ValidatedSpec ValidateSpec(GameSpec spec);
  explicit ValidatedSpec(GameSpec spec) : spec_(std::move(spec)) {}
  GameSpec spec_;
};

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kEigenTolerance = 1e-10;

// Parses the JSON configuration document. Throws Error(kParse) on malformed
// input and Error(kShape) when a matrix does not match its declared shape.
GameSpec LoadSpec(std::string_view text);
GameSpec LoadSpecFile(const std::string& path);

// Serializes back to the configuration format. Doubles are written with
// round-trip precision, so LoadSpec(DumpSpec(s)) reproduces s bit-exactly.
std::string DumpSpec(const GameSpec& spec);

// Checks every standing assumption and throws ValidationError listing all
// violations found.
ValidatedSpec ValidateSpec(GameSpec spec);

}  // namespace switchgame

#endif  // SWITCHGAME_MODEL_HPP_
