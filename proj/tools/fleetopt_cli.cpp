// fleetopt command-line tool: solve scenarios, compare solvers, run the
// horizon-scaling benchmark, and validate decision plans.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fleetopt/bench.hpp"
#include "fleetopt/exact.hpp"
#include "fleetopt/ip_model.hpp"
#include "fleetopt/ml.hpp"
#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/plan_io.hpp"
#include "fleetopt/report.hpp"
#include "fleetopt/scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitResourceLimit = 3;
constexpr int kExitInputError = 4;

struct ScenarioArgs {
  int case1_id = 0;  // 1..8, 0 = unset
  bool use_case2 = false;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* a = cmd->add_option("--case1", case1_id,
                              "Built-in base-model scenario id (1..8)")
                  ->check(CLI::Range(1, 8));
    auto* b = cmd->add_flag("--case2", use_case2,
                            "Built-in extended-model scenario");
    auto* c = cmd->add_option("--file", file, "Scenario file path");
    a->excludes(b)->excludes(c);
    b->excludes(c);
  }
  bool any() const { return case1_id > 0 || use_case2 || !file.empty(); }
  std::string name() const {
    if (case1_id > 0) return "case1-" + std::to_string(case1_id);
    if (use_case2) return "case2";
    return file;
  }
  fleetopt::ScenarioConfig resolve() const {
    if (case1_id > 0) return fleetopt::case1(case1_id);
    if (use_case2) return fleetopt::case2();
    if (!file.empty()) return fleetopt::load(file);
    throw fleetopt::ScenarioError(
        "no scenario given (use --case1, --case2 or --file)");
  }
};

struct SolverArgs {
  std::string solver = "exact";
  std::uint64_t seed = 12345;
  int iterations = 20000;
  int restarts = 16;
  double penalty_weight = 0.0;
  double time_limit = 0.0;  // seconds, 0 = solver default
  double mem_limit = 0.0;   // MiB, 0 = solver default

  void attach(CLI::App* cmd, bool with_solver_choice) {
    if (with_solver_choice)
      cmd->add_option("--solver", solver, "Solver to run")
          ->check(CLI::IsMember({"exact", "ml"}));
    cmd->add_option("--seed", seed, "Random seed for the ML solver");
    cmd->add_option("--iterations", iterations,
                    "Gradient iterations per ML restart");
    cmd->add_option("--restarts", restarts, "ML restart count");
    cmd->add_option("--penalty-weight", penalty_weight,
                    "Constraint penalty weight c (<= 0: automatic)");
    cmd->add_option("--time-limit", time_limit, "Wall-time cap in seconds");
    cmd->add_option("--mem-limit", mem_limit,
                    "Memory cap in MiB (exact solver)");
  }
  fleetopt::BnbLimits bnb_limits() const {
    fleetopt::BnbLimits lim;
    if (time_limit > 0.0) lim.time_limit_sec = time_limit;
    if (mem_limit > 0.0)
      lim.memory_limit_bytes =
          static_cast<std::size_t>(mem_limit * 1024.0 * 1024.0);
    return lim;
  }
  fleetopt::MlHyperparams ml_params() const {
    fleetopt::MlHyperparams hp;
    hp.seed = seed;
    hp.iterations = iterations;
    hp.restarts = restarts;
    hp.penalty_weight = penalty_weight;
    if (time_limit > 0.0) hp.time_limit_sec = time_limit;
    return hp;
  }
};

int exit_code_for(fleetopt::SolveStatus status) {
  switch (status) {
    case fleetopt::SolveStatus::Optimal:
    case fleetopt::SolveStatus::Feasible:
      return kExitOk;
    case fleetopt::SolveStatus::Infeasible:
      return kExitInfeasible;
    default:
      return kExitResourceLimit;  // Timeout / MemoryLimit
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw fleetopt::ScenarioError("cannot open " + out_path);
  out << text;
}

// Deployment table: one block per type, ages as rows, periods as columns.
std::string deployment_table(const fleetopt::ScenarioConfig& cfg,
                             const fleetopt::DecisionPlan& plan) {
  std::ostringstream os;
  for (int o = 0; o <= cfg.num_types_O; ++o) {
    os << "deployed";
    if (cfg.num_types_O > 0) os << " (type " << o << ")";
    os << "\n  age \\ period";
    for (int j = 0; j <= cfg.horizon_T; ++j)
      os << " " << std::setw(8) << j;
    os << "\n";
    for (int i = 0; i <= cfg.max_age_N; ++i) {
      os << "  " << std::setw(12) << i;
      for (int j = 0; j <= cfg.horizon_T; ++j)
        os << " " << std::setw(8) << std::llround(plan.v(o, i, j));
      os << "\n";
    }
  }
  return os.str();
}

std::string solve_table(const fleetopt::ScenarioConfig& cfg,
                        const std::string& solver,
                        const fleetopt::SolveResult& res) {
  std::ostringstream os;
  os << "solver: " << solver << "\n";
  os << "status: " << fleetopt::to_string(res.status) << "\n";
  os << std::fixed << std::setprecision(2);
  os << "objective: " << res.objective << "\n";
  if (res.status == fleetopt::SolveStatus::Optimal ||
      res.status == fleetopt::SolveStatus::Feasible) {
    const fleetopt::CostReport c = fleetopt::total_cost(cfg, res.plan);
    os << "costs: purchase " << c.purchase << ", fixed " << c.fixed << ", om "
       << c.om << ", salvage -" << c.salvage;
    if (cfg.model_kind == fleetopt::ModelKind::Extended)
      os << ", environment "
         << c.environment_production + c.environment_operation +
                c.environment_disposal
         << ", upgrade " << c.upgrade_components + c.upgrade_labor
         << ", component resale -" << c.component_resale;
    os << "\n" << deployment_table(cfg, res.plan);
  }
  for (const fleetopt::ViolationRecord& v : res.audit)
    os << "violation: " << v.to_string() << "\n";
  return os.str();
}

std::string solve_csv(const fleetopt::ScenarioConfig& cfg,
                      const fleetopt::DecisionPlan& plan) {
  std::ostringstream os;
  os << "type,age,period,deployed,purchased,sold\n";
  for (int o = 0; o <= cfg.num_types_O; ++o)
    for (int i = 0; i <= cfg.max_age_N; ++i)
      for (int j = 0; j <= cfg.horizon_T; ++j)
        os << o << "," << i << "," << j << "," << std::llround(plan.v(o, i, j))
           << "," << std::llround(plan.b(o, i, j)) << ","
           << std::llround(plan.s(o, i, j)) << "\n";
  return os.str();
}

fleetopt::SolveResult run_solver(const fleetopt::ScenarioConfig& cfg,
                                 const SolverArgs& sv) {
  if (sv.solver == "exact") return fleetopt::solve_bnb(cfg, sv.bnb_limits());
  return fleetopt::solve_ml(cfg, sv.ml_params());
}

int cmd_solve(const ScenarioArgs& sc, const SolverArgs& sv,
              const std::string& format, const std::string& out_path,
              const std::string& plan_out) {
  const fleetopt::ScenarioConfig cfg = sc.resolve();
  const fleetopt::SolveResult res = run_solver(cfg, sv);
  if (format == "json") {
    emit(fleetopt::to_text(fleetopt::solve_report(cfg, sv.solver, res)),
         out_path);
  } else if (format == "csv") {
    emit(solve_csv(cfg, res.plan), out_path);
  } else {
    emit(solve_table(cfg, sv.solver, res), out_path);
  }
  if (!plan_out.empty() && (res.status == fleetopt::SolveStatus::Optimal ||
                            res.status == fleetopt::SolveStatus::Feasible))
    fleetopt::save_plan(cfg, res.plan, plan_out);
  return exit_code_for(res.status);
}

int cmd_compare(const ScenarioArgs& sc, const SolverArgs& sv,
                const std::string& format, const std::string& out_path) {
  std::vector<std::pair<std::string, fleetopt::ScenarioConfig>> set;
  if (sc.any()) {
    set.emplace_back(sc.name(), sc.resolve());
  } else {
    for (int id = 1; id <= 8; ++id)
      set.emplace_back("case1-" + std::to_string(id), fleetopt::case1(id));
  }

  int worst = kExitOk;
  fleetopt::ordered_json jrows = fleetopt::ordered_json::array();
  std::ostringstream table, csv;
  table << std::setw(10) << "scenario" << std::setw(18) << "exact"
        << std::setw(18) << "ml" << std::setw(16) << "discrepancy%" << "\n";
  csv << "scenario,exact_objective,ml_objective,discrepancy_percent\n";
  for (const auto& [name, cfg] : set) {
    const fleetopt::SolveResult ex = fleetopt::solve_bnb(cfg, sv.bnb_limits());
    const fleetopt::SolveResult ml = fleetopt::solve_ml(cfg, sv.ml_params());
    worst = std::max({worst, exit_code_for(ex.status),
                      exit_code_for(ml.status)});
    fleetopt::ordered_json row = fleetopt::compare_report(cfg, ex, ml);
    row["scenario"] = name;
    jrows.push_back(std::move(row));
    const double d = fleetopt::discrepancy(ml.objective, ex.objective);
    table << std::setw(10) << name << std::fixed << std::setprecision(2)
          << std::setw(18) << ex.objective << std::setw(18) << ml.objective
          << std::setprecision(4) << std::setw(16) << d << "\n";
    csv << name << "," << ex.objective << "," << ml.objective << "," << d
        << "\n";
  }
  if (format == "json")
    emit(fleetopt::to_text(jrows), out_path);
  else if (format == "csv")
    emit(csv.str(), out_path);
  else
    emit(table.str(), out_path);
  return worst;
}

int cmd_bench(const ScenarioArgs& sc, const SolverArgs& sv,
              const std::vector<int>& horizons, int repetitions,
              const std::string& out_path) {
  fleetopt::ScenarioConfig base =
      sc.any() ? sc.resolve() : fleetopt::case1(7);
  fleetopt::BenchOptions opt;
  if (!horizons.empty()) opt.ladder = horizons;
  opt.repetitions = repetitions;
  if (sv.time_limit > 0.0) opt.time_limit_sec = sv.time_limit;
  if (sv.mem_limit > 0.0)
    opt.memory_limit_bytes =
        static_cast<std::size_t>(sv.mem_limit * 1024.0 * 1024.0);
  opt.ml.seed = sv.seed;
  if (sv.iterations != SolverArgs{}.iterations)  // user override
    opt.ml.iterations = sv.iterations;
  if (sv.penalty_weight > 0.0) opt.ml.penalty_weight = sv.penalty_weight;
  const std::vector<fleetopt::BenchRow> rows =
      fleetopt::run_scaling(base, opt);
  std::ostringstream os;
  fleetopt::write_bench_csv(rows, os);
  emit(os.str(), out_path);
  if (!out_path.empty()) std::cout << out_path << "\n";
  return kExitOk;
}

int cmd_validate(const ScenarioArgs& sc, const std::string& plan_path) {
  const fleetopt::ScenarioConfig cfg = sc.resolve();
  const fleetopt::DecisionPlan plan = fleetopt::load_plan(cfg, plan_path);
  const std::vector<fleetopt::ViolationRecord> audit =
      fleetopt::check_feasibility(cfg, plan);
  if (audit.empty()) {
    std::cout << "feasible\n";
    return kExitOk;
  }
  for (const fleetopt::ViolationRecord& v : audit)
    std::cout << v.to_string() << "\n";
  return kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fleet renewal and upgrade optimizer"};
  app.require_subcommand(1);

  ScenarioArgs sc_solve, sc_compare, sc_bench, sc_validate;
  SolverArgs sv_solve, sv_compare, sv_bench;
  std::string format_solve = "table", format_compare = "table";
  std::string out_solve, out_compare, out_bench, plan_out, plan_in;
  std::vector<int> horizons;
  int repetitions = 1;

  CLI::App* solve = app.add_subcommand("solve", "Solve one scenario");
  sc_solve.attach(solve);
  sv_solve.attach(solve, true);
  solve->add_option("--format", format_solve, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  solve->add_option("--out", out_solve, "Write output to this file");
  solve->add_option("--plan-out", plan_out,
                    "Also write the decision plan to this file");

  CLI::App* compare =
      app.add_subcommand("compare", "Run both solvers and compare");
  sc_compare.attach(compare);
  sv_compare.attach(compare, false);
  compare->add_option("--format", format_compare, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  compare->add_option("--out", out_compare, "Write output to this file");

  CLI::App* bench =
      app.add_subcommand("bench", "Horizon-scaling benchmark (CSV)");
  sc_bench.attach(bench);
  sv_bench.attach(bench, false);
  bench->add_option("--horizons", horizons, "Horizon ladder")
      ->delimiter(',');
  bench->add_option("--repetitions", repetitions, "Runs per rung")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", out_bench, "CSV output path");

  CLI::App* validate =
      app.add_subcommand("validate", "Check a plan file against a scenario");
  sc_validate.attach(validate);
  validate->add_option("--plan", plan_in, "Plan file to validate")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (solve->parsed())
      return cmd_solve(sc_solve, sv_solve, format_solve, out_solve, plan_out);
    if (compare->parsed())
      return cmd_compare(sc_compare, sv_compare, format_compare, out_compare);
    if (bench->parsed())
      return cmd_bench(sc_bench, sv_bench, horizons, repetitions, out_bench);
    if (validate->parsed()) return cmd_validate(sc_validate, plan_in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
