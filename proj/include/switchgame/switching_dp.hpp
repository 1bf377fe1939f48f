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

#ifndef SWITCHGAME_SWITCHING_DP_HPP_
#define SWITCHGAME_SWITCHING_DP_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "switchgame/model.hpp"
#include "switchgame/riccati.hpp"

namespace switchgame {

// Stages elapsed since the last switch closure, or Init if the switch has
// never closed. Together with the stage index this determines the predicted
// error covariance, so it serves as the key of the covariance tree.
class ObsAge {
 public:
  static constexpr ObsAge Init() { return ObsAge(0); }
  static ObsAge Since(int tau);

  constexpr bool is_init() const { return code_ == 0; }
  // Stages since the last closure; 0 for Init.
  constexpr int since() const { return code_; }

  // Age at the next stage when the switch stays open.
  constexpr ObsAge AfterOpen() const {
    return is_init() ? ObsAge(0) : ObsAge(code_ + 1);
  }
  static constexpr ObsAge AfterClosure() { return ObsAge(1); }

  constexpr bool AdmissibleAt(int k) const {
    return is_init() || (code_ >= 1 && code_ <= k);
  }

  // "init" or the decimal age.
  std::string ToString() const;

  constexpr auto operator<=>(const ObsAge&) const = default;

 private:
  constexpr explicit ObsAge(int code) : code_(code) {}
  int code_;
};

struct TreeNode {
  ObsAge age;
  Matrix M_pred;
};

// Reachable predicted covariances per stage: stage k holds Init followed by
// Since(1..k), so entry index equals age.since().
using CovarianceTree = std::vector<std::vector<TreeNode>>;

// Per-player totals of the two switching branches at a node.
struct Branches {
  std::array<double, 2> closed;  // stage cost with closure + value at Since(1)
  std::array<double, 2> open;    // stage cost without + value at open successor
};

struct CovNode {
  int k = 0;
  ObsAge age = ObsAge::Init();
  Matrix M_pred;

  double V1 = 0.0;  // best-SPE cost-to-go, player 1
  double V2 = 0.0;  // best-SPE cost-to-go, player 2
  double Vw = 0.0;  // centralized welfare cost-to-go
  bool delta_star = false;
  bool delta_central = false;
  double poa = 0.0;  // V1 + V2 - Vw

  // Absent at the terminal stage, where there is no switching action.
  std::optional<Branches> game;
  std::optional<Branches> central;

  double V(Player p) const { return p == Player::kOne ? V1 : V2; }
};

class ValueTables {
 public:
  ValueTables() = default;
  explicit ValueTables(std::vector<std::vector<CovNode>> nodes,
                       std::size_t eval_count)
      : nodes_(std::move(nodes)), eval_count_(eval_count) {}

  int horizon() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<CovNode>& stage(int k) const { return nodes_.at(k); }
  std::vector<CovNode>& mutable_stage(int k) { return nodes_.at(k); }

  const CovNode* Find(int k, ObsAge age) const;
  // Throws Error(kUnreachable) for nodes outside the tree.
  const CovNode& At(int k, ObsAge age) const;

  // Number of stored per-player value evaluations consulted by the
  // switching decisions, bounded by T(T+3).
  std::size_t eval_count() const { return eval_count_; }
  bool has_welfare() const { return has_welfare_; }
  void set_has_welfare(bool v) { has_welfare_ = v; }

 private:
  std::vector<std::vector<CovNode>> nodes_;
  std::size_t eval_count_ = 0;
  bool has_welfare_ = false;
};

// Joint switching decision per (stage, age). Both players play the same bit;
// mixed profiles are never emitted.
class SwitchPolicy {
 public:
  SwitchPolicy() = default;
  explicit SwitchPolicy(std::vector<std::vector<bool>> decisions)
      : decisions_(std::move(decisions)) {}

  static SwitchPolicy NeverClose(int horizon);

  int horizon() const { return static_cast<int>(decisions_.size()) - 1; }
  // Always false at the terminal stage.
  bool Decide(int k, ObsAge age) const;

 private:
  std::vector<std::vector<bool>> decisions_;
};

struct Schedule {
  std::vector<bool> delta;    // k = 0..T
  std::vector<ObsAge> ages;   // age at each stage before the decision

  int closures() const;
};

struct SwitchingSolution {
  ValueTables tables;
  SwitchPolicy policy;          // best subgame-perfect joint decision
  SwitchPolicy central_policy;  // welfare-optimal decision
};

// Per-stage cost in covariance space:
//   (1 - delta) tr(Q M) + delta (tr(M P_t) + lambda).
// delta = 1 at the terminal stage is an error.
double StageCost(const Matrix& M_pred, bool delta, int t, Player player,
                 const RiccatiSolution& ric, const GameSpec& spec);

CovarianceTree ReachableNodes(const ValidatedSpec& spec);

// Best-SPE backward induction over the covariance tree. Welfare fields of
// the returned nodes are left unset.
struct GameSolution {
  ValueTables tables;
  SwitchPolicy policy;
};
GameSolution BackwardInduction(const ValidatedSpec& spec,
                               const RiccatiSolution& ric);

// Single-objective induction on the summed costs. Ties keep the switch open.
struct WelfareSolution {
  // values[k][age.since()] and the per-player split of that value along the
  // centralized policy.
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::array<double, 2>>> split;
  std::vector<std::vector<Branches>> branches;  // k < T only
  SwitchPolicy policy;
};
WelfareSolution CentralizedInduction(const ValidatedSpec& spec,
                                     const RiccatiSolution& ric);

// Copies welfare values and decisions into the tables and fills poa.
void AttachWelfare(ValueTables& tables, const WelfareSolution& welfare);

// l_k = V1 + V2 - Vw for every node, indexed like the tables.
std::vector<std::vector<double>> PriceOfAnarchy(const ValueTables& tables);

// Runs BackwardInduction and CentralizedInduction and merges them.
SwitchingSolution SolveSwitching(const ValidatedSpec& spec,
                                 const RiccatiSolution& ric);

bool SwitchDecision(int k, ObsAge age, const ValueTables& tables);

// Largest lambda for which player p still strictly prefers closing:
//   V_{k+1}(open successor) - V_{k+1}(Since(1)) - tr((P_k - Q) M).
double SwitchingThreshold(int k, ObsAge age, const ValueTables& tables,
                          const RiccatiSolution& ric, const GameSpec& spec,
                          Player p);

// Same bound with the trace term evaluated on A M A' + S instead of M.
// Diagnostic only; SwitchingThreshold is the one consistent with
// SwitchDecision.
double PredictedFormThreshold(int k, ObsAge age, const ValueTables& tables,
                              const RiccatiSolution& ric, const GameSpec& spec,
                              Player p);

// Open-branch over closed-branch cost for player p.
double ClosureRatio(int k, ObsAge age, const ValueTables& tables, Player p);

// (V1, V2) at the stage-0 Init node. Equals the expected total cost because
// the zero-mean prior makes the omitted ||xhat_{0|-1}||^2 term vanish.
std::array<double, 2> ExpectedTotalCost(const ValueTables& tables);

// Walks the policy forward from Init at stage 0.
Schedule ReplaySchedule(const SwitchPolicy& policy);

// Cost of following `schedule` from stage 0, summed stage by stage.
std::array<double, 2> ScheduleCost(const Schedule& schedule,
                                   const RiccatiSolution& ric,
                                   const ValidatedSpec& spec);

}  // namespace switchgame

#endif  // SWITCHGAME_SWITCHING_DP_HPP_
