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

#include "switchgame/estimator.hpp"

#include <sstream>

namespace switchgame {
namespace {

void RequireSize(const Vector& v, Eigen::Index size, const char* name) {
  if (v.size() != size) {
    std::ostringstream msg;
    msg << name << " has dimension " << v.size() << ", expected " << size;
    throw Error(ErrorKind::kDimension, "estimator", msg.str());
  }
}

}  // namespace

Vector PredictState(const Vector& xhat, const Vector& u1, const Vector& u2,
                    const GameSpec& spec) {
  RequireSize(xhat, spec.n, "xhat");
  RequireSize(u1, spec.m, "u1");
  RequireSize(u2, spec.m, "u2");
  return spec.A * xhat + spec.B1 * u1 + spec.B2 * u2;
}

Vector UpdateState(const Vector& xhat_pred, bool delta, const Observation& y) {
  if (delta) {
    const Vector* x = std::get_if<Vector>(&y);
    if (x == nullptr) {
      throw Error(ErrorKind::kProtocol, "estimator",
                  "switch closed but the observation is an erasure");
    }
    RequireSize(*x, xhat_pred.size(), "observation");
    return *x;
  }
  if (!IsErasure(y)) {
    throw Error(ErrorKind::kProtocol, "estimator",
                "switch open but a state observation was delivered");
  }
  return xhat_pred;
}

Matrix PredictCov(const Matrix& M, const GameSpec& spec) {
  const Matrix next = spec.A * M * spec.A.transpose() + spec.S;
  return 0.5 * (next + next.transpose());
}

Matrix UpdateCov(const Matrix& M_pred, bool delta) {
  if (delta) return Matrix::Zero(M_pred.rows(), M_pred.cols());
  return M_pred;
}

EstimatorState InitialEstimator(const GameSpec& spec) {
  EstimatorState s;
  s.t = 0;
  s.xhat_pred = Vector::Zero(spec.n);
  s.xhat = s.xhat_pred;
  s.M_pred = 0.5 * (spec.Sigma0 + spec.Sigma0.transpose());
  s.M = s.M_pred;
  return s;
}

void ApplyObservation(EstimatorState& state, bool delta,
                      const Observation& y) {
  state.xhat = UpdateState(state.xhat_pred, delta, y);
  state.M = UpdateCov(state.M_pred, delta);
}

void AdvanceEstimator(EstimatorState& state, const Vector& u1,
                      const Vector& u2, const GameSpec& spec) {
  state.xhat_pred = PredictState(state.xhat, u1, u2, spec);
  state.M_pred = PredictCov(state.M, spec);
  state.t += 1;
}

}  // namespace switchgame
