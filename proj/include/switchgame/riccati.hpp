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

#ifndef SWITCHGAME_RICCATI_HPP_
#define SWITCHGAME_RICCATI_HPP_

#include <vector>

#include "switchgame/model.hpp"

namespace switchgame {

// Coupled cost-to-go matrices and feedback gains of the subgame-perfect
// control law u^i_t = -L^i_t xhat_t. Independent of any switching policy.
struct RiccatiSolution {
  std::vector<Matrix> P1, P2;  // t = 0..T, n x n
  std::vector<Matrix> L1, L2;  // t = 0..T-1, m x n

  int horizon() const { return static_cast<int>(P1.size()) - 1; }
  const Matrix& P(Player p, int t) const {
    return p == Player::kOne ? P1[t] : P2[t];
  }
  const Matrix& L(Player p, int t) const {
    return p == Player::kOne ? L1[t] : L2[t];
  }
};

struct GainPair {
  Matrix L1;
  Matrix L2;
};

struct CostPair {
  Matrix P1;
  Matrix P2;
};

inline constexpr double kGainResidualTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;

// Solves the two mutual best-response equations
//   (Q11 + B1'P1 B1) L1 + B1'P1 B2 L2 = B1'P1 A
//   B2'P2 B1 L1 + (Q22 + B2'P2 B2) L2 = B2'P2 A
// as one stacked 2m x 2m system. P1_next/P2_next are the stage t+1 costs.
// Throws SingularSystemError (stage -1) when the system is singular.
GainPair SolveGainsAt(const Matrix& P1_next, const Matrix& P2_next,
                      const GameSpec& spec);

// Max-norm residual of player p's best-response equation for a gain pair.
double BestResponseResidual(const Matrix& P1_next, const Matrix& P2_next,
                            const GainPair& gains, Player p,
                            const GameSpec& spec);

// One backward step of the coupled Riccati recursion. Results are
// symmetrized.
CostPair RiccatiStep(const Matrix& P1_next, const Matrix& P2_next,
                     const Matrix& L1, const Matrix& L2, const GameSpec& spec);

// Full backward pass from P^i_T = Q^i. Throws SingularSystemError with the
// failing stage, or Error(kNumerical) if a cost matrix loses PSD-ness.
RiccatiSolution SolveRiccati(const ValidatedSpec& spec);

}  // namespace switchgame

#endif  // SWITCHGAME_RICCATI_HPP_
