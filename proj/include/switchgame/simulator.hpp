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

#ifndef SWITCHGAME_SIMULATOR_HPP_
#define SWITCHGAME_SIMULATOR_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "switchgame/estimator.hpp"
#include "switchgame/model.hpp"
#include "switchgame/riccati.hpp"
#include "switchgame/switching_dp.hpp"

namespace switchgame {

// Gaussian source for one roll-out. The engine of run r is seeded from
// SplitMix64(seed, r), so every run's draws are a pure function of
// (seed, r). Normals come from the Box-Muller transform on 53-bit uniforms,
// which keeps the stream identical across standard libraries.
class NoiseStream {
 public:
  static constexpr const char* kGenerator = "mt19937_64+splitmix64+boxmuller/1";

  NoiseStream(std::uint64_t seed, std::uint64_t run);

  double StandardNormal();
  // factor * z with z ~ N(0, I).
  Vector Draw(const Matrix& factor);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// F with F F' = cov, from the eigendecomposition with negative eigenvalues
// clamped to zero. Works for singular covariances.
Matrix CovarianceFactor(const Matrix& cov);

struct StageRecord {
  int t = 0;
  Vector x;          // realized state
  Vector xhat;       // filtered estimate
  Vector xhat_pred;  // prediction before the switching outcome
  Vector u1, u2;     // zero at the terminal stage
  bool delta = false;
  Observation y = Erasure{};
  double c1 = 0.0, c2 = 0.0;  // realized stage costs
  Vector w;  // noise entering x_{t+1}; zero at the terminal stage
};

struct TrajectoryRecord {
  std::vector<StageRecord> stages;  // t = 0..T

  double TotalCost(Player p) const;
  int Closures() const;
};

// Runs one closed-loop game from given draws: x0 and w_0..w_{T-1}.
TrajectoryRecord RolloutWithNoise(const ValidatedSpec& spec,
                                  const RiccatiSolution& ric,
                                  const SwitchPolicy& policy, const Vector& x0,
                                  const std::vector<Vector>& w);

// Draws x0 ~ N(0, Sigma0) then each w_t ~ N(0, S) from `noise`.
TrajectoryRecord Rollout(const ValidatedSpec& spec, const RiccatiSolution& ric,
                         const SwitchPolicy& policy, NoiseStream& noise);

struct SimSummary {
  int n_runs = 0;
  std::uint64_t seed = 0;
  double mean_cost1 = 0.0, mean_cost2 = 0.0;
  double se1 = 0.0, se2 = 0.0;
  int closure_count = 0;
  double analytic1 = 0.0, analytic2 = 0.0;
};

struct MonteCarloOptions {
  std::uint64_t seed = 0;
  int n_runs = 10000;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  int threads = 0;
};

// Independent roll-outs aggregated in run-index order with compensated
// summation. `analytic` is copied into the summary (NaN when absent).
SimSummary MonteCarlo(const ValidatedSpec& spec, const RiccatiSolution& ric,
                      const SwitchPolicy& policy,
                      const MonteCarloOptions& options,
                      std::optional<std::array<double, 2>> analytic = {});

struct Comparison {
  SimSummary with_switching;  // the spec's switching costs
  SimSummary never_close;     // forced-open policy
  std::array<double, 2> analytic_ratio;
  std::array<double, 2> empirical_ratio;
};

// Equilibrium switching against the forced-open baseline, both analytic and
// simulated on the same seed.
Comparison CompareBaselines(const ValidatedSpec& spec,
                            const RiccatiSolution& ric,
                            const MonteCarloOptions& options);

}  // namespace switchgame

#endif  // SWITCHGAME_SIMULATOR_HPP_
