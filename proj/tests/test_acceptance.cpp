// End-to-end acceptance checks for solution quality, cross-solver
// consistency and byte-level determinism of the JSON reports. The oracle
// equivalence, gradient and flow-balance acceptance checks live with
// their modules in test_exact.cpp / test_ml.cpp, and the scaling-trend
// check is the separate long-running test_scaling binary.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <chrono>
#include <string>

#include "fleetopt/exact.hpp"
#include "fleetopt/ip_model.hpp"
#include "fleetopt/ml.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/report.hpp"
#include "fleetopt/scenarios.hpp"

using namespace fleetopt;

namespace {

constexpr std::array<double, 8> kKnownOptima = {
    -5274136.0, -6029618.0, -4486399.0, -5565468.0,
    -6285552.0, -7023553.0, -5668737.0, -6234137.0};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

TEST_CASE("criterion 1: exact solver reproduces the eight published optima") {
  for (int id = 1; id <= 8; ++id) {
    const ScenarioConfig cfg = case1(id);
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve_bnb(cfg);
    const double sec = seconds_since(t0);
    const double target = kKnownOptima[id - 1];
    // On a miss, surface the full cost decomposition for diagnosis.
    const CostReport costs = total_cost(cfg, res.plan);
    INFO("scenario " << id << " cost decomposition: "
                     << to_text(cost_json(costs)));
    CAPTURE(id, res.objective, target, sec);
    REQUIRE(res.status == SolveStatus::Optimal);
    REQUIRE(std::abs(res.objective - target) <= 0.001 * std::abs(target));
    REQUIRE(sec <= 60.0);
  }
}

TEST_CASE("criterion 2: ML discrepancy and feasibility on all base scenarios") {
  int exact_matches = 0;
  for (int id = 1; id <= 8; ++id) {
    const ScenarioConfig cfg = case1(id);
    const double optimum = solve_bnb(cfg).objective;
    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve_ml(cfg);  // default hyperparameters
    const double sec = seconds_since(t0);
    const double d = discrepancy(res.objective, optimum);
    CAPTURE(id, res.objective, optimum, d, sec);
    REQUIRE(res.status == SolveStatus::Feasible);
    REQUIRE(check_feasibility(cfg, res.plan).empty());
    REQUIRE(d <= 1.5);
    REQUIRE(sec <= 120.0);
    if (d <= 1e-9) ++exact_matches;
  }
  REQUIRE(exact_matches >= 3);
}

TEST_CASE("criterion 3: solvers agree on the extended case") {
  const ScenarioConfig cfg = case2();
  const SolveResult exact = solve_bnb(cfg);
  const SolveResult ml = solve_ml(cfg);
  REQUIRE(exact.status == SolveStatus::Optimal);
  REQUIRE(ml.status == SolveStatus::Feasible);
  REQUIRE(discrepancy(ml.objective, exact.objective) <= 0.5);

  // Externally published figure for this fixture; tracked but not binding
  // because the published inputs underdetermine several tables.
  const double tracked = 257454.0;
  if (std::abs(exact.objective - tracked) > 0.05 * tracked)
    WARN("extended-case objective " << exact.objective
                                    << " is outside +/-5% of the tracked "
                                    << tracked << " (flag, not a failure)");
}

TEST_CASE("criterion 8: repeated runs yield byte-identical JSON reports") {
  auto sweep = [] {
    std::string all;
    for (int id = 1; id <= 8; ++id) {
      const ScenarioConfig cfg = case1(id);
      all += to_text(compare_report(cfg, solve_bnb(cfg), solve_ml(cfg)));
    }
    const ScenarioConfig ext = case2();
    all += to_text(compare_report(ext, solve_bnb(ext), solve_ml(ext)));
    return all;
  };
  const std::string first = sweep();
  const std::string second = sweep();
  REQUIRE(first == second);
}
