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

#ifndef SWITCHGAME_ESTIMATOR_HPP_
#define SWITCHGAME_ESTIMATOR_HPP_

#include <variant>

#include "switchgame/model.hpp"

namespace switchgame {

// The symbol delivered while the switch is open.
struct Erasure {
  bool operator==(const Erasure&) const = default;
};

// What the link delivers at one stage: the exact state, or an erasure.
using Observation = std::variant<Erasure, Vector>;

inline bool IsErasure(const Observation& y) {
  return std::holds_alternative<Erasure>(y);
}

struct EstimatorState {
  int t = 0;
  Vector xhat;       // filtered estimate
  Vector xhat_pred;  // one-step prediction
  Matrix M;          // filtered error covariance
  Matrix M_pred;     // predicted error covariance
};

// A xhat + B1 u1 + B2 u2.
Vector PredictState(const Vector& xhat, const Vector& u1, const Vector& u2,
                    const GameSpec& spec);

// Returns the observed state on a closure and the prediction otherwise.
// A closure without a state, or a state without a closure, is a protocol
// error.
Vector UpdateState(const Vector& xhat_pred, bool delta, const Observation& y);

// A M A' + S, symmetrized.
Matrix PredictCov(const Matrix& M, const GameSpec& spec);

// Exact zero after a closure, M_pred otherwise.
Matrix UpdateCov(const Matrix& M_pred, bool delta);

// Estimator at stage 0 before the first switching decision: zero-mean prior
// and predicted covariance Sigma0.
EstimatorState InitialEstimator(const GameSpec& spec);

// Applies the stage-t switching outcome to `state` in place.
void ApplyObservation(EstimatorState& state, bool delta,
                      const Observation& y);

// Advances to stage t+1 given the controls applied at stage t.
void AdvanceEstimator(EstimatorState& state, const Vector& u1,
                      const Vector& u2, const GameSpec& spec);

}  // namespace switchgame

#endif  // SWITCHGAME_ESTIMATOR_HPP_
