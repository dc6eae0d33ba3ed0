#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "fleetopt/ip_model.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/scenarios.hpp"
#include "fleetopt/simplex.hpp"

using namespace fleetopt;

TEST_CASE("variable layout covers the whole instance") {
  for (const ScenarioConfig& cfg : {case1(1), case2()}) {
    const VarLayout L(cfg);
    const IpInstance inst = build_instance(cfg);
    REQUIRE(static_cast<int>(inst.num_vars()) == L.total());
    REQUIRE_FALSE(inst.rows.empty());
    REQUIRE(inst.objective.size() == inst.num_vars());
  }
}

TEST_CASE("deployment is pinned to zero at max age and settlement period") {
  const ScenarioConfig cfg = case1(1);
  const VarLayout L(cfg);
  const IpInstance inst = build_instance(cfg);
  for (int i = 0; i <= cfg.max_age_N; ++i)
    REQUIRE(inst.vars[L.v(0, i, cfg.horizon_T)].ub == 0.0);
  for (int j = 0; j <= cfg.horizon_T; ++j)
    REQUIRE(inst.vars[L.v(0, cfg.max_age_N, j)].ub == 0.0);
}

TEST_CASE("plan and flat vector round-trip") {
  for (const ScenarioConfig& cfg : {case1(2), case2()}) {
    DecisionPlan p = DecisionPlan::zeros(cfg);
    p.v(0, 0, 0) = 3.0;
    p.b(0, 0, 0) = 3.0;
    p.delta[0] = 1.0;
    if (cfg.model_kind == ModelKind::Extended) {
      p.m(0, 1, 1) = 2.0;
      p.bk(0, 1) = 2.0;
    }
    const DecisionPlan back = plan_from_vector(cfg, vector_from_plan(cfg, p));
    REQUIRE(back.v.raw() == p.v.raw());
    REQUIRE(back.b.raw() == p.b.raw());
    REQUIRE(back.delta == p.delta);
    if (cfg.model_kind == ModelKind::Extended)
      REQUIRE(back.bk.raw() == p.bk.raw());
  }
}

TEST_CASE("feasibility audit flags the violated constraint family") {
  const ScenarioConfig cfg = case1(1);
  const DecisionPlan empty = DecisionPlan::zeros(cfg);
  const auto audit = check_feasibility(cfg, empty);
  REQUIRE_FALSE(audit.empty());
  std::set<std::string> tags;
  for (const ViolationRecord& v : audit) tags.insert(v.constraint);
  REQUIRE(tags.count("(5)") == 1);  // demand not covered
  REQUIRE(tags.count("(7)") == 1);  // initial fleet not placed or sold
}

TEST_CASE("integrality and domain violations are audited") {
  const ScenarioConfig cfg = case1(1);
  DecisionPlan p = DecisionPlan::zeros(cfg);
  p.v(0, 0, 0) = 1.5;
  bool integrality = false;
  for (const ViolationRecord& v : check_feasibility(cfg, p))
    if (v.constraint == "(14)") integrality = true;
  REQUIRE(integrality);
}

TEST_CASE("LP export is readable") {
  std::ostringstream os;
  write_lp(build_instance(case1(1)), os);
  REQUIRE(os.str().find("Minimize") != std::string::npos);
  REQUIRE(os.str().find("Subject To") != std::string::npos);
}

TEST_CASE("simplex solves a classic bounded LP") {
  // min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), -36.
  IpInstance inst;
  inst.vars.push_back({"x", {}, 0.0, 1e9});
  inst.vars.push_back({"y", {}, 0.0, 1e9});
  inst.objective = {-3.0, -5.0};
  IpRow r1;
  r1.coefs = {{0, 1.0}};
  r1.rel = Rel::Le;
  r1.rhs = 4.0;
  IpRow r2;
  r2.coefs = {{1, 2.0}};
  r2.rel = Rel::Le;
  r2.rhs = 12.0;
  IpRow r3;
  r3.coefs = {{0, 3.0}, {1, 2.0}};
  r3.rel = Rel::Le;
  r3.rhs = 18.0;
  inst.rows = {r1, r2, r3};
  const LpResult res = solve_lp(inst);
  REQUIRE(res.status == LpStatus::Optimal);
  REQUIRE(res.objective == Catch::Approx(-36.0));
  REQUIRE(res.x[0] == Catch::Approx(2.0));
  REQUIRE(res.x[1] == Catch::Approx(6.0));
}

TEST_CASE("simplex detects infeasibility") {
  // x <= 1 and x >= 2 cannot hold together.
  IpInstance inst;
  inst.vars.push_back({"x", {}, 0.0, 1e9});
  inst.objective = {1.0};
  IpRow r1;
  r1.coefs = {{0, 1.0}};
  r1.rel = Rel::Le;
  r1.rhs = 1.0;
  IpRow r2;
  r2.coefs = {{0, 1.0}};
  r2.rel = Rel::Ge;
  r2.rhs = 2.0;
  inst.rows = {r1, r2};
  REQUIRE(solve_lp(inst).status == LpStatus::Infeasible);
}
