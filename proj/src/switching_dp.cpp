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

#include "switchgame/switching_dp.hpp"

#include <set>
#include <sstream>

#include "switchgame/estimator.hpp"

namespace switchgame {
namespace {

Error Unreachable(int k, ObsAge age) {
  std::ostringstream msg;
  msg << "node (k=" << k << ", age=" << age.ToString()
      << ") is not in the covariance tree";
  return Error(ErrorKind::kUnreachable, "switching_dp", msg.str());
}

double TerminalCost(const Matrix& M, Player p, const GameSpec& spec) {
  return (spec.Q(p) * M).trace();
}

// Shared backward pass: `decide` picks the joint bit from the per-player
// branch totals. Values follow the chosen branch.
template <typename Decide>
void InduceValues(const ValidatedSpec& validated, const RiccatiSolution& ric,
                  const CovarianceTree& tree, Decide decide,
                  std::vector<std::vector<std::array<double, 2>>>& values,
                  std::vector<std::vector<Branches>>& branches,
                  std::vector<std::vector<bool>>& decisions,
                  std::size_t* eval_count) {
  const GameSpec& spec = validated.spec();
  const int T = spec.T;
  values.assign(T + 1, {});
  branches.assign(T, {});
  decisions.assign(T + 1, {});

  values[T].resize(tree[T].size());
  decisions[T].assign(tree[T].size(), false);
  for (std::size_t a = 0; a < tree[T].size(); ++a) {
    const Matrix& M = tree[T][a].M_pred;
    values[T][a] = {TerminalCost(M, Player::kOne, spec),
                    TerminalCost(M, Player::kTwo, spec)};
  }

  std::size_t evals = 0;
  for (int k = T - 1; k >= 0; --k) {
    const auto& next = values[k + 1];
    const std::size_t count = tree[k].size();
    values[k].resize(count);
    branches[k].resize(count);
    decisions[k].assign(count, false);

    std::set<int> consulted;
    const int closed_idx = ObsAge::AfterClosure().since();
    consulted.insert(closed_idx);
    for (std::size_t a = 0; a < count; ++a) {
      const TreeNode& node = tree[k][a];
      const int open_idx = node.age.AfterOpen().since();
      consulted.insert(open_idx);

      Branches b;
      for (Player p : {Player::kOne, Player::kTwo}) {
        const int i = Index(p);
        b.closed[i] = StageCost(node.M_pred, true, k, p, ric, spec) +
                      next[closed_idx][i];
        b.open[i] = StageCost(node.M_pred, false, k, p, ric, spec) +
                    next[open_idx][i];
      }
      const bool close = decide(b);
      decisions[k][a] = close;
      values[k][a] = close ? b.closed : b.open;
      branches[k][a] = b;
    }
    evals += 2 * consulted.size();
  }
  if (eval_count != nullptr) *eval_count = evals;
}

}  // namespace

ObsAge ObsAge::Since(int tau) {
  if (tau < 1) {
    throw Error(ErrorKind::kUnreachable, "switching_dp",
                "observation age must be at least 1");
  }
  return ObsAge(tau);
}

std::string ObsAge::ToString() const {
  return is_init() ? std::string("init") : std::to_string(code_);
}

const CovNode* ValueTables::Find(int k, ObsAge age) const {
  if (k < 0 || k > horizon() || !age.AdmissibleAt(k)) return nullptr;
  const auto& s = nodes_[k];
  const auto idx = static_cast<std::size_t>(age.since());
  return idx < s.size() ? &s[idx] : nullptr;
}

const CovNode& ValueTables::At(int k, ObsAge age) const {
  const CovNode* node = Find(k, age);
  if (node == nullptr) throw Unreachable(k, age);
  return *node;
}

SwitchPolicy SwitchPolicy::NeverClose(int horizon) {
  std::vector<std::vector<bool>> d(horizon + 1);
  for (int k = 0; k <= horizon; ++k) d[k].assign(k + 1, false);
  return SwitchPolicy(std::move(d));
}

bool SwitchPolicy::Decide(int k, ObsAge age) const {
  if (k < 0 || k > horizon() || !age.AdmissibleAt(k)) {
    throw Unreachable(k, age);
  }
  if (k == horizon()) return false;
  return decisions_[k][age.since()];
}

int Schedule::closures() const {
  int c = 0;
  for (bool d : delta) c += d ? 1 : 0;
  return c;
}

double StageCost(const Matrix& M_pred, bool delta, int t, Player player,
                 const RiccatiSolution& ric, const GameSpec& spec) {
  if (t < 0 || t > spec.T) {
    throw Error(ErrorKind::kDimension, "switching_dp",
                "stage index outside 0..T");
  }
  if (!delta) return (spec.Q(player) * M_pred).trace();
  if (t == spec.T) {
    throw Error(ErrorKind::kProtocol, "switching_dp",
                "no switching action at the terminal stage");
  }
  return (M_pred * ric.P(player, t)).trace() + spec.lambda(player);
}

CovarianceTree ReachableNodes(const ValidatedSpec& validated) {
  const GameSpec& spec = validated.spec();
  const int T = spec.T;

  // since_chain[tau] = f^tau(0); init_chain[k] = f^k(Sigma0).
  std::vector<Matrix> since_chain(T + 1);
  std::vector<Matrix> init_chain(T + 1);
  since_chain[0] = Matrix::Zero(spec.n, spec.n);
  init_chain[0] = 0.5 * (spec.Sigma0 + spec.Sigma0.transpose());
  for (int j = 1; j <= T; ++j) {
    since_chain[j] = PredictCov(since_chain[j - 1], spec);
    init_chain[j] = PredictCov(init_chain[j - 1], spec);
  }

  CovarianceTree tree(T + 1);
  for (int k = 0; k <= T; ++k) {
    tree[k].reserve(k + 1);
    tree[k].push_back({ObsAge::Init(), init_chain[k]});
    for (int tau = 1; tau <= k; ++tau) {
      tree[k].push_back({ObsAge::Since(tau), since_chain[tau]});
    }
  }
  return tree;
}

GameSolution BackwardInduction(const ValidatedSpec& validated,
                               const RiccatiSolution& ric) {
  const CovarianceTree tree = ReachableNodes(validated);
  std::vector<std::vector<std::array<double, 2>>> values;
  std::vector<std::vector<Branches>> branches;
  std::vector<std::vector<bool>> decisions;
  std::size_t evals = 0;

  // Close only when closing is strictly cheaper for both players; ties and
  // one-sided preferences keep the switch open.
  InduceValues(
      validated, ric, tree,
      [](const Branches& b) {
        return b.closed[0] < b.open[0] && b.closed[1] < b.open[1];
      },
      values, branches, decisions, &evals);

  const int T = validated->T;
  std::vector<std::vector<CovNode>> nodes(T + 1);
  for (int k = 0; k <= T; ++k) {
    nodes[k].reserve(tree[k].size());
    for (std::size_t a = 0; a < tree[k].size(); ++a) {
      CovNode node;
      node.k = k;
      node.age = tree[k][a].age;
      node.M_pred = tree[k][a].M_pred;
      node.V1 = values[k][a][0];
      node.V2 = values[k][a][1];
      node.delta_star = decisions[k][a];
      if (k < T) node.game = branches[k][a];
      nodes[k].push_back(std::move(node));
    }
  }
  return {ValueTables(std::move(nodes), evals),
          SwitchPolicy(std::move(decisions))};
}

WelfareSolution CentralizedInduction(const ValidatedSpec& validated,
                                     const RiccatiSolution& ric) {
  const CovarianceTree tree = ReachableNodes(validated);
  WelfareSolution out;
  std::vector<std::vector<bool>> decisions;

  // The welfare branch totals are sums of the per-player totals, so when the
  // centralized and game decisions agree the values agree bit for bit.
  InduceValues(
      validated, ric, tree,
      [](const Branches& b) {
        return b.closed[0] + b.closed[1] < b.open[0] + b.open[1];
      },
      out.split, out.branches, decisions, nullptr);

  out.values.resize(out.split.size());
  for (std::size_t k = 0; k < out.split.size(); ++k) {
    out.values[k].reserve(out.split[k].size());
    for (const auto& v : out.split[k]) out.values[k].push_back(v[0] + v[1]);
  }
  out.policy = SwitchPolicy(std::move(decisions));
  return out;
}

void AttachWelfare(ValueTables& tables, const WelfareSolution& welfare) {
  const int T = tables.horizon();
  if (static_cast<int>(welfare.values.size()) != T + 1) {
    throw Error(ErrorKind::kDimension, "switching_dp",
                "welfare solution horizon does not match the value tables");
  }
  for (int k = 0; k <= T; ++k) {
    auto& stage = tables.mutable_stage(k);
    for (auto& node : stage) {
      const auto a = static_cast<std::size_t>(node.age.since());
      node.Vw = welfare.values[k].at(a);
      node.delta_central = welfare.policy.Decide(k, node.age);
      if (k < T) node.central = welfare.branches[k].at(a);
      node.poa = (node.V1 + node.V2) - node.Vw;
    }
  }
  tables.set_has_welfare(true);
}

std::vector<std::vector<double>> PriceOfAnarchy(const ValueTables& tables) {
  if (!tables.has_welfare()) {
    throw Error(ErrorKind::kProtocol, "switching_dp",
                "price of anarchy requires welfare values");
  }
  std::vector<std::vector<double>> out(tables.horizon() + 1);
  for (int k = 0; k <= tables.horizon(); ++k) {
    for (const auto& node : tables.stage(k)) {
      out[k].push_back((node.V1 + node.V2) - node.Vw);
    }
  }
  return out;
}

SwitchingSolution SolveSwitching(const ValidatedSpec& spec,
                                 const RiccatiSolution& ric) {
  GameSolution game = BackwardInduction(spec, ric);
  WelfareSolution welfare = CentralizedInduction(spec, ric);
  AttachWelfare(game.tables, welfare);
  return {std::move(game.tables), std::move(game.policy),
          std::move(welfare.policy)};
}

bool SwitchDecision(int k, ObsAge age, const ValueTables& tables) {
  return tables.At(k, age).delta_star;
}

namespace {

const CovNode& NonTerminal(int k, ObsAge age, const ValueTables& tables) {
  const CovNode& node = tables.At(k, age);
  if (k >= tables.horizon()) {
    throw Error(ErrorKind::kProtocol, "switching_dp",
                "no switching action at the terminal stage");
  }
  return node;
}

double ValueGap(int k, ObsAge age, const ValueTables& tables, Player p) {
  const CovNode& open = tables.At(k + 1, age.AfterOpen());
  const CovNode& closed = tables.At(k + 1, ObsAge::AfterClosure());
  return open.V(p) - closed.V(p);
}

}  // namespace

double SwitchingThreshold(int k, ObsAge age, const ValueTables& tables,
                          const RiccatiSolution& ric, const GameSpec& spec,
                          Player p) {
  const CovNode& node = NonTerminal(k, age, tables);
  const Matrix diff = ric.P(p, k) - spec.Q(p);
  return ValueGap(k, age, tables, p) - (diff * node.M_pred).trace();
}

double PredictedFormThreshold(int k, ObsAge age, const ValueTables& tables,
                              const RiccatiSolution& ric, const GameSpec& spec,
                              Player p) {
  const CovNode& node = NonTerminal(k, age, tables);
  const Matrix diff = ric.P(p, k) - spec.Q(p);
  return ValueGap(k, age, tables, p) -
         (diff * PredictCov(node.M_pred, spec)).trace();
}

double ClosureRatio(int k, ObsAge age, const ValueTables& tables, Player p) {
  const CovNode& node = NonTerminal(k, age, tables);
  const int i = Index(p);
  return node.game->open[i] / node.game->closed[i];
}

std::array<double, 2> ExpectedTotalCost(const ValueTables& tables) {
  const CovNode& root = tables.At(0, ObsAge::Init());
  return {root.V1, root.V2};
}

Schedule ReplaySchedule(const SwitchPolicy& policy) {
  Schedule s;
  ObsAge age = ObsAge::Init();
  for (int k = 0; k <= policy.horizon(); ++k) {
    const bool d = policy.Decide(k, age);
    s.delta.push_back(d);
    s.ages.push_back(age);
    age = d ? ObsAge::AfterClosure() : age.AfterOpen();
  }
  return s;
}

std::array<double, 2> ScheduleCost(const Schedule& schedule,
                                   const RiccatiSolution& ric,
                                   const ValidatedSpec& validated) {
  const GameSpec& spec = validated.spec();
  if (static_cast<int>(schedule.delta.size()) != spec.T + 1) {
    throw Error(ErrorKind::kDimension, "switching_dp",
                "schedule length does not match the horizon");
  }
  std::array<double, 2> total{0.0, 0.0};
  Matrix M_pred = 0.5 * (spec.Sigma0 + spec.Sigma0.transpose());
  for (int k = 0; k <= spec.T; ++k) {
    const bool d = schedule.delta[k];
    for (Player p : {Player::kOne, Player::kTwo}) {
      total[Index(p)] += StageCost(M_pred, d, k, p, ric, spec);
    }
    M_pred = PredictCov(UpdateCov(M_pred, d), spec);
  }
  return total;
}

}  // namespace switchgame
