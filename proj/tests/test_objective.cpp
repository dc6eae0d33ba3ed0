#include <catch2/catch_amalgamated.hpp>

#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"

using namespace fleetopt;

namespace {

// One asset type, one deployment period, max age 1: buy one new asset,
// deploy it, sell it one period later.
ScenarioConfig tiny(double rate) {
  ScenarioConfig cfg;
  cfg.horizon_T = 1;
  cfg.max_age_N = 1;
  cfg.num_types_O = 0;
  cfg.discount_rate = rate;
  cfg.model_kind = ModelKind::Base;
  cfg.purchase_price = Grid3<double>(1, 2, 1);
  cfg.salvage = Grid3<double>(1, 2, 1);
  cfg.usage = Grid3<double>(1, 2, 1);
  cfg.om_cost = Grid3<double>(1, 2, 1);
  cfg.initial_fleet = Grid3<double>(1, 2, 1);
  cfg.purchase_price(0, 0, 0) = 10.0;
  cfg.purchase_price(0, 1, 0) = 6.0;
  cfg.salvage(0, 0, 0) = 7.0;
  cfg.salvage(0, 1, 0) = 6.0;
  cfg.usage(0, 0, 0) = 5.0;
  cfg.om_cost(0, 0, 0) = 2.0;
  cfg.demand = {5.0, 0.0};
  cfg.fixed_cost = {3.0};
  return validate_scenario(cfg);
}

DecisionPlan tiny_plan(const ScenarioConfig& cfg) {
  DecisionPlan p = DecisionPlan::zeros(cfg);
  p.v(0, 0, 0) = 1.0;
  p.b(0, 0, 0) = 1.0;
  p.s(0, 1, 1) = 1.0;
  p.delta = {1.0, 0.0};
  return p;
}

}  // namespace

TEST_CASE("base cost decomposition on a hand-checked plan") {
  const ScenarioConfig cfg = tiny(0.0);
  const CostReport c = total_cost(cfg, tiny_plan(cfg));
  REQUIRE(c.purchase == Catch::Approx(10.0));
  REQUIRE(c.fixed == Catch::Approx(3.0));
  REQUIRE(c.om == Catch::Approx(2.0));
  REQUIRE(c.salvage == Catch::Approx(6.0));
  REQUIRE(c.total == Catch::Approx(10.0 + 3.0 + 2.0 - 6.0));
  REQUIRE(c.total == Catch::Approx(c.signed_sum()));
}

TEST_CASE("discounting: purchases at f^j, O&M one period later, sales at f^j") {
  const ScenarioConfig cfg = tiny(0.05);
  const double f = 1.0 / 1.05;
  const CostReport c = total_cost(cfg, tiny_plan(cfg));
  REQUIRE(c.purchase == Catch::Approx(10.0));       // bought in period 0
  REQUIRE(c.om == Catch::Approx(2.0 * f));          // paid at period end
  REQUIRE(c.salvage == Catch::Approx(6.0 * f));     // sold in period 1
  REQUIRE(c.total == Catch::Approx(10.0 + 3.0 + 2.0 * f - 6.0 * f));
}

TEST_CASE("templated cost value agrees with the report") {
  const ScenarioConfig cfg = tiny(0.05);
  const DecisionPlan p = tiny_plan(cfg);
  REQUIRE(total_cost_value(cfg, p) == Catch::Approx(total_cost(cfg, p).total));
}

TEST_CASE("discrepancy is absolute percentage error") {
  REQUIRE(discrepancy(101.0, 100.0) == Catch::Approx(1.0));
  REQUIRE(discrepancy(-99.0, -100.0) == Catch::Approx(1.0));
  REQUIRE(discrepancy(-100.0, -100.0) == Catch::Approx(0.0));
  REQUIRE_THROWS(discrepancy(1.0, 0.0));
}
