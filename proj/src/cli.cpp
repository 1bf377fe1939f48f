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

#include "switchgame/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "switchgame/csv.hpp"
#include "switchgame/model.hpp"
#include "switchgame/riccati.hpp"
#include "switchgame/simulator.hpp"
#include "switchgame/switching_dp.hpp"

namespace switchgame::cli {
namespace {

constexpr const char* kCommands[] = {"riccati",  "values",  "schedule",
                                     "simulate", "compare", "poa"};

std::string OutPath(const RunConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

void Emit(const RunConfig& cfg, const char* name, const std::string& body,
          std::ostream& out) {
  const std::string path = OutPath(cfg, name);
  csv::WriteFile(path, body);
  out << "wrote " << path << '\n';
}

void Run(const RunConfig& cfg, std::ostream& out) {
  const ValidatedSpec spec = ValidateSpec(LoadSpecFile(cfg.config_path));
  std::filesystem::create_directories(cfg.output_dir);
  const RiccatiSolution ric = SolveRiccati(spec);
  const MonteCarloOptions mc{cfg.seed, cfg.runs, cfg.threads};

  if (cfg.command == "riccati") {
    Emit(cfg, "riccati.csv", csv::Riccati(ric), out);
    return;
  }
  if (cfg.command == "compare") {
    const Comparison c = CompareBaselines(spec, ric, mc);
    Emit(cfg, "compare.csv", csv::CompareTable(c), out);
    out << "cost ratio (switching / never close): player 1 "
        << csv::FormatDouble(c.analytic_ratio[0]) << ", player 2 "
        << csv::FormatDouble(c.analytic_ratio[1]) << '\n';
    return;
  }

  const SwitchingSolution sol = SolveSwitching(spec, ric);
  if (cfg.command == "values") {
    Emit(cfg, "values.csv", csv::Values(sol.tables), out);
  } else if (cfg.command == "poa") {
    Emit(cfg, "poa.csv", csv::Poa(sol.tables), out);
  } else if (cfg.command == "schedule") {
    const Schedule s = ReplaySchedule(sol.policy);
    Emit(cfg, "schedule.csv", csv::ScheduleTable(s), out);
    out << "closures: " << s.closures() << " of " << spec->T << " stages\n";
  } else if (cfg.command == "simulate") {
    NoiseStream first(cfg.seed, 0);
    const TrajectoryRecord rec = Rollout(spec, ric, sol.policy, first);
    const SimSummary summary =
        MonteCarlo(spec, ric, sol.policy, mc, ExpectedTotalCost(sol.tables));
    Emit(cfg, "trajectory.csv", csv::Trajectory(rec), out);
    Emit(cfg, "summary.csv", csv::Summary(summary), out);
  }
}

int ExitFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kShape:
    case ErrorKind::kValidation:
    case ErrorKind::kDimension:
      return kValidationError;
    case ErrorKind::kNumerical:
    case ErrorKind::kProtocol:
    case ErrorKind::kUnreachable:
      return kNumericalError;
    case ErrorKind::kUsage:
      return kUsageError;
  }
  return kUsageError;
}

}  // namespace

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Switched-observation LQ game solver and simulator",
               "switchgame"};
  app.require_subcommand(1);

  RunConfig cfg;
  for (const char* name : kCommands) {
    CLI::App* sub = app.add_subcommand(name, "");
    sub->add_option("-c,--config", cfg.config_path, "game configuration (JSON)")
        ->required();
    sub->add_option("-o,--output", cfg.output_dir, "output directory");
    if (std::string(name) == "simulate" || std::string(name) == "compare") {
      sub->add_option("--seed", cfg.seed, "base seed");
      sub->add_option("--runs", cfg.runs, "number of roll-outs")
          ->check(CLI::Range(2, 100000000));
      sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)")
          ->check(CLI::NonNegativeNumber);
    }
  }
  app.get_subcommand("riccati")->description(
      "coupled Riccati matrices and gains -> riccati.csv");
  app.get_subcommand("values")->description(
      "equilibrium and welfare value tables -> values.csv");
  app.get_subcommand("schedule")->description(
      "equilibrium switching schedule from the initial node -> schedule.csv");
  app.get_subcommand("simulate")->description(
      "Monte Carlo roll-outs -> trajectory.csv, summary.csv");
  app.get_subcommand("compare")->description(
      "switching vs never-close baseline -> compare.csv");
  app.get_subcommand("poa")->description("social loss per node -> poa.csv");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << app.help() << "error: " << e.what() << '\n';
    return kUsageError;
  }

  for (const CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    Run(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitFor(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: [cli] " << e.what() << '\n';
    return kUsageError;
  }
  return kOk;
}

}  // namespace switchgame::cli
