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

#include "switchgame/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace switchgame::csv {
namespace {

void AppendMatrix(std::ostringstream& out, int t, const char* name,
                  const Matrix& mat) {
  for (Eigen::Index r = 0; r < mat.rows(); ++r) {
    for (Eigen::Index c = 0; c < mat.cols(); ++c) {
      out << t << ',' << name << ',' << r << ',' << c << ','
          << FormatDouble(mat(r, c)) << '\n';
    }
  }
}

void VectorHeader(std::ostringstream& out, const char* name, Eigen::Index dim) {
  for (Eigen::Index i = 0; i < dim; ++i) out << ',' << name << '_' << i;
}

void VectorCells(std::ostringstream& out, const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << FormatDouble(v(i));
}

}  // namespace

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string Riccati(const RiccatiSolution& ric) {
  std::ostringstream out;
  out << "t,matrix,row,col,value\n";
  const int T = ric.horizon();
  for (int t = 0; t <= T; ++t) {
    AppendMatrix(out, t, "P1", ric.P1[t]);
    AppendMatrix(out, t, "P2", ric.P2[t]);
    if (t < T) {
      AppendMatrix(out, t, "L1", ric.L1[t]);
      AppendMatrix(out, t, "L2", ric.L2[t]);
    }
  }
  return out.str();
}

std::string Values(const ValueTables& tables) {
  std::ostringstream out;
  out << "k,age,V1,V2,Vw,delta_star,delta_central,poa\n";
  for (int k = 0; k <= tables.horizon(); ++k) {
    for (const auto& node : tables.stage(k)) {
      out << node.k << ',' << node.age.ToString() << ','
          << FormatDouble(node.V1) << ',' << FormatDouble(node.V2) << ','
          << FormatDouble(node.Vw) << ',' << (node.delta_star ? 1 : 0) << ','
          << (node.delta_central ? 1 : 0) << ',' << FormatDouble(node.poa)
          << '\n';
    }
  }
  return out.str();
}

std::string Poa(const ValueTables& tables) {
  std::ostringstream out;
  out << "k,age,poa\n";
  for (int k = 0; k <= tables.horizon(); ++k) {
    for (const auto& node : tables.stage(k)) {
      out << node.k << ',' << node.age.ToString() << ','
          << FormatDouble(node.poa) << '\n';
    }
  }
  return out.str();
}

std::string ScheduleTable(const Schedule& schedule) {
  std::ostringstream out;
  out << "k,delta\n";
  for (std::size_t k = 0; k < schedule.delta.size(); ++k) {
    out << k << ',' << (schedule.delta[k] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string Trajectory(const TrajectoryRecord& record) {
  std::ostringstream out;
  if (record.stages.empty()) return "t\n";
  const Eigen::Index n = record.stages.front().x.size();
  const Eigen::Index m = record.stages.front().u1.size();
  out << 't';
  VectorHeader(out, "x", n);
  VectorHeader(out, "xhat", n);
  VectorHeader(out, "xhat_pred", n);
  VectorHeader(out, "u1", m);
  VectorHeader(out, "u2", m);
  out << ",delta";
  VectorHeader(out, "y", n);
  out << ",c1,c2";
  VectorHeader(out, "w", n);
  out << '\n';

  for (const auto& s : record.stages) {
    out << s.t;
    VectorCells(out, s.x);
    VectorCells(out, s.xhat);
    VectorCells(out, s.xhat_pred);
    VectorCells(out, s.u1);
    VectorCells(out, s.u2);
    out << ',' << (s.delta ? 1 : 0);
    if (const Vector* y = std::get_if<Vector>(&s.y)) {
      VectorCells(out, *y);
    } else {
      for (Eigen::Index i = 0; i < n; ++i) out << ",e";
    }
    out << ',' << FormatDouble(s.c1) << ',' << FormatDouble(s.c2);
    VectorCells(out, s.w);
    out << '\n';
  }
  return out.str();
}

std::string Summary(const SimSummary& s) {
  std::ostringstream out;
  out << "n_runs,seed,mean_cost1,mean_cost2,se1,se2,closure_count,"
         "analytic1,analytic2\n";
  out << s.n_runs << ',' << s.seed << ',' << FormatDouble(s.mean_cost1) << ','
      << FormatDouble(s.mean_cost2) << ',' << FormatDouble(s.se1) << ','
      << FormatDouble(s.se2) << ',' << s.closure_count << ','
      << FormatDouble(s.analytic1) << ',' << FormatDouble(s.analytic2)
      << '\n';
  return out.str();
}

std::string CompareTable(const Comparison& c) {
  std::ostringstream out;
  out << "player,analytic_switching,analytic_never_close,analytic_ratio,"
         "mean_switching,se_switching,mean_never_close,se_never_close,"
         "empirical_ratio,closures_switching,closures_never_close\n";
  const SimSummary& a = c.with_switching;
  const SimSummary& b = c.never_close;
  out << 1 << ',' << FormatDouble(a.analytic1) << ','
      << FormatDouble(b.analytic1) << ',' << FormatDouble(c.analytic_ratio[0])
      << ',' << FormatDouble(a.mean_cost1) << ',' << FormatDouble(a.se1) << ','
      << FormatDouble(b.mean_cost1) << ',' << FormatDouble(b.se1) << ','
      << FormatDouble(c.empirical_ratio[0]) << ',' << a.closure_count << ','
      << b.closure_count << '\n';
  out << 2 << ',' << FormatDouble(a.analytic2) << ','
      << FormatDouble(b.analytic2) << ',' << FormatDouble(c.analytic_ratio[1])
      << ',' << FormatDouble(a.mean_cost2) << ',' << FormatDouble(a.se2) << ','
      << FormatDouble(b.mean_cost2) << ',' << FormatDouble(b.se2) << ','
      << FormatDouble(c.empirical_ratio[1]) << ',' << a.closure_count << ','
      << b.closure_count << '\n';
  return out.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kUsage, "cli", "cannot write '" + path + "'");
  }
  out << contents;
  if (!out) {
    throw Error(ErrorKind::kUsage, "cli", "failed writing '" + path + "'");
  }
}

}  // namespace switchgame::csv
