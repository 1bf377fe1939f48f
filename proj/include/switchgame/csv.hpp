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

#ifndef SWITCHGAME_CSV_HPP_
#define SWITCHGAME_CSV_HPP_

#include <string>

#include "switchgame/riccati.hpp"
#include "switchgame/simulator.hpp"
#include "switchgame/switching_dp.hpp"

namespace switchgame::csv {

// 17 significant digits; parses back to the same double.
std::string FormatDouble(double x);

// Long format: t,matrix,row,col,value with matrix in {P1,P2,L1,L2}.
std::string Riccati(const RiccatiSolution& ric);
// k,age,V1,V2,Vw,delta_star,delta_central,poa
std::string Values(const ValueTables& tables);
// k,age,poa
std::string Poa(const ValueTables& tables);
// k,delta
std::string ScheduleTable(const Schedule& schedule);
// One row per stage; vector columns are suffixed _0.._{dim-1}. The y columns
// hold "e" on erasure stages.
std::string Trajectory(const TrajectoryRecord& record);
std::string Summary(const SimSummary& summary);
// One row per player.
std::string CompareTable(const Comparison& comparison);

void WriteFile(const std::string& path, const std::string& contents);

}  // namespace switchgame::csv

#endif  // SWITCHGAME_CSV_HPP_
