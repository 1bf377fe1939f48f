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

#include "switchgame/riccati.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace switchgame {
namespace {

Matrix Symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double MaxAbs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void CheckPsd(const Matrix& P, int t, const char* name) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(P, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo < -kPsdTolerance * std::max(1.0, MaxAbs(P))) {
    std::ostringstream msg;
    msg << name << " at stage " << t
        << " is not positive semidefinite (smallest eigenvalue " << lo << ")";
    throw Error(ErrorKind::kNumerical, "riccati", msg.str());
  }
}

}  // namespace

GainPair SolveGainsAt(const Matrix& P1_next, const Matrix& P2_next,
                      const GameSpec& spec) {
  const int m = spec.m;
  const Matrix P1B1 = P1_next * spec.B1;
  const Matrix P1B2 = P1_next * spec.B2;
  const Matrix P2B1 = P2_next * spec.B1;
  const Matrix P2B2 = P2_next * spec.B2;

  Matrix lhs(2 * m, 2 * m);
  lhs.topLeftCorner(m, m) = spec.Q11 + spec.B1.transpose() * P1B1;
  lhs.topRightCorner(m, m) = spec.B1.transpose() * P1B2;
  lhs.bottomLeftCorner(m, m) = spec.B2.transpose() * P2B1;
  lhs.bottomRightCorner(m, m) = spec.Q22 + spec.B2.transpose() * P2B2;

  Matrix rhs(2 * m, spec.n);
  rhs.topRows(m) = spec.B1.transpose() * P1_next * spec.A;
  rhs.bottomRows(m) = spec.B2.transpose() * P2_next * spec.A;

  Eigen::FullPivLU<Matrix> lu(lhs);
  const double rcond = lu.isInvertible() ? lu.rcond() : 0.0;
  if (!(rcond > 2 * m * std::numeric_limits<double>::epsilon())) {
    throw SingularSystemError(-1, rcond);
  }
  const Matrix stacked = lu.solve(rhs);

  GainPair gains{stacked.topRows(m), stacked.bottomRows(m)};
  for (Player p : {Player::kOne, Player::kTwo}) {
    const double residual =
        BestResponseResidual(P1_next, P2_next, gains, p, spec);
    if (residual > kGainResidualTolerance * std::max(1.0, MaxAbs(rhs))) {
      std::ostringstream msg;
      msg << "best-response residual " << residual << " for player "
          << Index(p) + 1 << " exceeds tolerance";
      throw Error(ErrorKind::kNumerical, "riccati", msg.str());
    }
  }
  return gains;
}

double BestResponseResidual(const Matrix& P1_next, const Matrix& P2_next,
                            const GainPair& gains, Player p,
                            const GameSpec& spec) {
  const Matrix& P = p == Player::kOne ? P1_next : P2_next;
  const Matrix& Bi = spec.B(p);
  const Matrix& Bj = spec.B(Other(p));
  const Matrix& Li = p == Player::kOne ? gains.L1 : gains.L2;
  const Matrix& Lj = p == Player::kOne ? gains.L2 : gains.L1;
  const Matrix r = (spec.Own(p) + Bi.transpose() * P * Bi) * Li +
                   Bi.transpose() * P * Bj * Lj - Bi.transpose() * P * spec.A;
  return MaxAbs(r);
}

CostPair RiccatiStep(const Matrix& P1_next, const Matrix& P2_next,
                     const Matrix& L1, const Matrix& L2,
                     const GameSpec& spec) {
  const Matrix closed = spec.A - spec.B1 * L1 - spec.B2 * L2;
  const Matrix P1 = spec.Q1 + L1.transpose() * spec.Q11 * L1 +
                    L2.transpose() * spec.Q12 * L2 +
                    closed.transpose() * P1_next * closed;
  const Matrix P2 = spec.Q2 + L2.transpose() * spec.Q22 * L2 +
                    L1.transpose() * spec.Q21 * L1 +
                    closed.transpose() * P2_next * closed;
  return {Symmetrize(P1), Symmetrize(P2)};
}

RiccatiSolution SolveRiccati(const ValidatedSpec& validated) {
  const GameSpec& spec = validated.spec();
  const int T = spec.T;
  RiccatiSolution sol;
  sol.P1.resize(T + 1);
  sol.P2.resize(T + 1);
  sol.L1.resize(T);
  sol.L2.resize(T);
  sol.P1[T] = spec.Q1;
  sol.P2[T] = spec.Q2;

  for (int t = T - 1; t >= 0; --t) {
    GainPair gains;
    try {
      gains = SolveGainsAt(sol.P1[t + 1], sol.P2[t + 1], spec);
    } catch (const SingularSystemError& e) {
      throw SingularSystemError(t, e.reciprocal_condition());
    }
    CostPair costs =
        RiccatiStep(sol.P1[t + 1], sol.P2[t + 1], gains.L1, gains.L2, spec);
    CheckPsd(costs.P1, t, "P1");
    CheckPsd(costs.P2, t, "P2");
    sol.L1[t] = std::move(gains.L1);
    sol.L2[t] = std::move(gains.L2);
    sol.P1[t] = std::move(costs.P1);
    sol.P2[t] = std::move(costs.P2);
  }
  return sol;
}

}  // namespace switchgame
