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

#include "switchgame/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace switchgame {
namespace {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t run) {
  std::uint64_t state = seed;
  const std::uint64_t a = SplitMix64(state);
  state = a ^ (run * 0xD1B54A32D192ED03ull);
  return SplitMix64(state);
}

// Uniform on (0, 1), never exactly zero.
double OpenUniform(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double Value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double Quadratic(const Vector& v, const Matrix& W) { return v.dot(W * v); }

struct MeanSe {
  double mean;
  double se;
};

MeanSe Aggregate(const std::vector<double>& samples) {
  CompensatedSum sum;
  for (double x : samples) sum.Add(x);
  const double n = static_cast<double>(samples.size());
  const double mean = sum.Value() / n;
  CompensatedSum sq;
  for (double x : samples) sq.Add((x - mean) * (x - mean));
  const double var = sq.Value() / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed, std::uint64_t run)
    : engine_(StreamSeed(seed, run)) {}

double NoiseStream::StandardNormal() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = OpenUniform(engine_);
  const double u2 = OpenUniform(engine_);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  return r * std::cos(theta);
}

Vector NoiseStream::Draw(const Matrix& factor) {
  Vector z(factor.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = StandardNormal();
  return factor * z;
}

Matrix CovarianceFactor(const Matrix& cov) {
  const Matrix sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

double TrajectoryRecord::TotalCost(Player p) const {
  double total = 0.0;
  for (const auto& s : stages) total += p == Player::kOne ? s.c1 : s.c2;
  return total;
}

int TrajectoryRecord::Closures() const {
  int c = 0;
  for (const auto& s : stages) c += s.delta ? 1 : 0;
  return c;
}

TrajectoryRecord RolloutWithNoise(const ValidatedSpec& validated,
                                  const RiccatiSolution& ric,
                                  const SwitchPolicy& policy, const Vector& x0,
                                  const std::vector<Vector>& w) {
  const GameSpec& spec = validated.spec();
  const int T = spec.T;
  if (static_cast<int>(w.size()) != T || x0.size() != spec.n) {
    throw Error(ErrorKind::kDimension, "simulator",
                "noise draws do not match the horizon or state dimension");
  }

  TrajectoryRecord rec;
  rec.stages.reserve(T + 1);
  EstimatorState est = InitialEstimator(spec);
  ObsAge age = ObsAge::Init();
  Vector x = x0;

  for (int t = 0; t <= T; ++t) {
    StageRecord s;
    s.t = t;
    s.x = x;
    s.delta = policy.Decide(t, age);
    s.y = s.delta ? Observation(x) : Observation(Erasure{});
    s.xhat_pred = est.xhat_pred;
    ApplyObservation(est, s.delta, s.y);
    s.xhat = est.xhat;

    if (t < T) {
      s.u1 = -ric.L1[t] * s.xhat;
      s.u2 = -ric.L2[t] * s.xhat;
      s.c1 = Quadratic(x, spec.Q1) + Quadratic(s.u1, spec.Q11) +
             Quadratic(s.u2, spec.Q12) + (s.delta ? spec.lambda1 : 0.0);
      s.c2 = Quadratic(x, spec.Q2) + Quadratic(s.u2, spec.Q22) +
             Quadratic(s.u1, spec.Q21) + (s.delta ? spec.lambda2 : 0.0);
      s.w = w[t];
      x = spec.A * x + spec.B1 * s.u1 + spec.B2 * s.u2 + s.w;
      AdvanceEstimator(est, s.u1, s.u2, spec);
      age = s.delta ? ObsAge::AfterClosure() : age.AfterOpen();
    } else {
      s.u1 = Vector::Zero(spec.m);
      s.u2 = Vector::Zero(spec.m);
      s.c1 = Quadratic(x, spec.Q1);
      s.c2 = Quadratic(x, spec.Q2);
      s.w = Vector::Zero(spec.n);
    }
    rec.stages.push_back(std::move(s));
  }
  return rec;
}

TrajectoryRecord Rollout(const ValidatedSpec& spec, const RiccatiSolution& ric,
                         const SwitchPolicy& policy, NoiseStream& noise) {
  const Vector x0 = noise.Draw(CovarianceFactor(spec->Sigma0));
  const Matrix w_factor = CovarianceFactor(spec->S);
  std::vector<Vector> w;
  w.reserve(spec->T);
  for (int t = 0; t < spec->T; ++t) w.push_back(noise.Draw(w_factor));
  return RolloutWithNoise(spec, ric, policy, x0, w);
}

SimSummary MonteCarlo(const ValidatedSpec& spec, const RiccatiSolution& ric,
                      const SwitchPolicy& policy,
                      const MonteCarloOptions& options,
                      std::optional<std::array<double, 2>> analytic) {
  if (options.n_runs < 2) {
    throw Error(ErrorKind::kUsage, "simulator",
                "Monte Carlo needs at least 2 runs");
  }
  const auto n = static_cast<std::size_t>(options.n_runs);
  std::vector<double> cost1(n), cost2(n);
  std::vector<int> closures(n);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      NoiseStream noise(options.seed, r);
      const TrajectoryRecord rec = Rollout(spec, ric, policy, noise);
      cost1[r] = rec.TotalCost(Player::kOne);
      cost2[r] = rec.TotalCost(Player::kTwo);
      closures[r] = rec.Closures();
    }
  };

  std::size_t threads = options.threads > 0
                            ? static_cast<std::size_t>(options.threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t b = 0; b < n; b += chunk) {
      pool.emplace_back(work, b, std::min(n, b + chunk));
    }
  }

  for (std::size_t r = 1; r < n; ++r) {
    if (closures[r] != closures[0]) {
      std::ostringstream msg;
      msg << "closure count differs between run 0 (" << closures[0]
          << ") and run " << r << " (" << closures[r] << ")";
      throw Error(ErrorKind::kNumerical, "simulator", msg.str());
    }
  }

  SimSummary out;
  out.n_runs = options.n_runs;
  out.seed = options.seed;
  const MeanSe a = Aggregate(cost1);
  const MeanSe b = Aggregate(cost2);
  out.mean_cost1 = a.mean;
  out.se1 = a.se;
  out.mean_cost2 = b.mean;
  out.se2 = b.se;
  out.closure_count = closures[0];
  const double nan = std::numeric_limits<double>::quiet_NaN();
  out.analytic1 = analytic ? (*analytic)[0] : nan;
  out.analytic2 = analytic ? (*analytic)[1] : nan;
  return out;
}

Comparison CompareBaselines(const ValidatedSpec& spec,
                            const RiccatiSolution& ric,
                            const MonteCarloOptions& options) {
  const GameSolution game = BackwardInduction(spec, ric);
  const SwitchPolicy open = SwitchPolicy::NeverClose(spec->T);

  Comparison c;
  c.with_switching = MonteCarlo(spec, ric, game.policy, options,
                                ExpectedTotalCost(game.tables));
  c.never_close =
      MonteCarlo(spec, ric, open, options,
                 ScheduleCost(ReplaySchedule(open), ric, spec));
  c.analytic_ratio = {c.with_switching.analytic1 / c.never_close.analytic1,
                      c.with_switching.analytic2 / c.never_close.analytic2};
  c.empirical_ratio = {
      c.with_switching.mean_cost1 / c.never_close.mean_cost1,
      c.with_switching.mean_cost2 / c.never_close.mean_cost2};
  return c;
}

}  // namespace switchgame
