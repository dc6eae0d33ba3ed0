#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fleetopt/exact.hpp"
#include "fleetopt/ip_model.hpp"
#include "fleetopt/plan_io.hpp"
#include "fleetopt/scenarios.hpp"

using namespace fleetopt;

TEST_CASE("plan files round-trip and audit clean") {
  for (const ScenarioConfig& cfg : {case1(5), case2()}) {
    const SolveResult res = solve_bnb(cfg);
    REQUIRE(res.status == SolveStatus::Optimal);
    const std::string path = "roundtrip.plan";
    save_plan(cfg, res.plan, path);
    const DecisionPlan back = load_plan(cfg, path);
    REQUIRE(back.v.raw() == res.plan.v.raw());
    REQUIRE(back.delta == res.plan.delta);
    REQUIRE(check_feasibility(cfg, back).empty());
    std::remove(path.c_str());
  }
}

TEST_CASE("a capacity-short plan is flagged on the demand constraint") {
  const ScenarioConfig cfg = case1(5);
  const SolveResult res = solve_bnb(cfg);
  DecisionPlan broken = res.plan;
  // Remove one deployed asset in period 0 without breaking flow balance:
  // sell it instead.
  for (int i = 0; i <= cfg.max_age_N; ++i)
    if (broken.v(0, i, 0) >= 1.0) {
      broken.v(0, i, 0) -= 1.0;
      broken.s(0, i, 0) += 1.0;
      break;
    }
  const std::string path = "broken.plan";
  save_plan(cfg, broken, path);
  const DecisionPlan back = load_plan(cfg, path);
  bool capacity = false;
  for (const ViolationRecord& v : check_feasibility(cfg, back))
    if (v.constraint == "(5)") capacity = true;
  REQUIRE(capacity);
  std::remove(path.c_str());
}

TEST_CASE("plan loader rejects mismatched shapes") {
  const ScenarioConfig s5 = case1(5);
  const SolveResult res = solve_bnb(s5);
  save_plan(s5, res.plan, "mismatch.plan");
  REQUIRE_THROWS_AS(load_plan(case2(), "mismatch.plan"), ScenarioError);
  std::remove("mismatch.plan");
}

#ifdef FLEETOPT_CLI
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FLEETOPT_CLI) + " " + args;
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: solve writes a JSON report and exits 0") {
  REQUIRE(run_cli("solve --case1 7 --solver exact --format json "
                  "--out cli_out.json > /dev/null") == 0);
  const auto j = nlohmann::json::parse(slurp("cli_out.json"));
  REQUIRE(j["status"] == "optimal");
  REQUIRE(std::abs(j["objective"].get<double>() + 5668737.0) <
          0.001 * 5668737.0);
  std::remove("cli_out.json");
}

TEST_CASE("cli: solve/validate round trip through a plan file") {
  REQUIRE(run_cli("solve --case1 7 --solver exact --plan-out cli_roundtrip.plan"
                  " > /dev/null") == 0);
  REQUIRE(run_cli("validate --case1 7 --plan cli_roundtrip.plan "
                  "> cli_validate.txt") == 0);
  REQUIRE(slurp("cli_validate.txt").find("feasible") != std::string::npos);
  // The same plan cannot serve a doubled demand.
  ScenarioConfig harder = case1(7);
  for (double& d : harder.demand) d *= 2.0;
  save(harder, "cli_harder.scn");
  REQUIRE(run_cli("validate --file cli_harder.scn --plan cli_roundtrip.plan "
                  "> cli_validate2.txt") == 2);
  REQUIRE(slurp("cli_validate2.txt").find("(5)") != std::string::npos);
  std::remove("cli_harder.scn");
  std::remove("cli_roundtrip.plan");
  std::remove("cli_validate.txt");
  std::remove("cli_validate2.txt");
}

TEST_CASE("cli: deterministic ML output for a fixed seed") {
  REQUIRE(run_cli("solve --case1 2 --solver ml --seed 1 --iterations 1500 "
                  "--restarts 2 --format json --out cli_ml_a.json "
                  "> /dev/null") == 0);
  REQUIRE(run_cli("solve --case1 2 --solver ml --seed 1 --iterations 1500 "
                  "--restarts 2 --format json --out cli_ml_b.json "
                  "> /dev/null") == 0);
  REQUIRE(slurp("cli_ml_a.json") == slurp("cli_ml_b.json"));
  std::remove("cli_ml_a.json");
  std::remove("cli_ml_b.json");
}

TEST_CASE("cli: bench honours --horizons and the CSV schema") {
  REQUIRE(run_cli("bench --horizons 3,4 --iterations 300 "
                  "--out cli_bench.csv > /dev/null") == 0);
  const std::string csv = slurp("cli_bench.csv");
  REQUIRE(csv.rfind("horizon,solver,repetition,status,seconds,objective,"
                    "discrepancy_percent\n",
                    0) == 0);
  REQUIRE(csv.find("\n3,exact") != std::string::npos);
  REQUIRE(csv.find("\n4,ml") != std::string::npos);
  std::remove("cli_bench.csv");
}

TEST_CASE("cli: input errors exit with code 4") {
  REQUIRE(run_cli("solve --case1 42 2> /dev/null") == 4);
  REQUIRE(run_cli("solve --file does_not_exist.scn 2> /dev/null") == 4);
  REQUIRE(run_cli("frobnicate 2> /dev/null") == 4);
}
#endif  // FLEETOPT_CLI
