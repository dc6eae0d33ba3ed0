#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "fleetopt/scenarios.hpp"

using namespace fleetopt;

TEST_CASE("case1 ids are range-checked") {
  REQUIRE_THROWS_AS(case1(0), ScenarioError);
  REQUIRE_THROWS_AS(case1(9), ScenarioError);
}

TEST_CASE("case1 scenario grid varies price, O&M, utilization, demand") {
  const ScenarioConfig s1 = case1(1), s2 = case1(2), s5 = case1(5);
  REQUIRE(s1.demand[0] == Catch::Approx(300000.0));
  REQUIRE(s2.demand[0] == Catch::Approx(228000.0));
  // Constant utilization in odd ids, tapering in even ids.
  REQUIRE(s1.usage(0, 9, 0) == Catch::Approx(20000.0));
  REQUIRE(s2.usage(0, 9, 0) == Catch::Approx(8000.0));
  // Linear prices in 1..4, empirical in 5..8.
  REQUIRE(s1.purchase_price(0, 10, 0) == Catch::Approx(463150.0));
  REQUIRE(s5.purchase_price(0, 10, 0) == Catch::Approx(330000.0));
  // Three assets at each odd age.
  double fleet = 0.0;
  for (int i = 0; i <= 10; ++i) fleet += s1.initial_fleet(0, i, 0);
  REQUIRE(fleet == Catch::Approx(15.0));
}

TEST_CASE("case2 is a two-type extended scenario") {
  const ScenarioConfig cfg = case2();
  REQUIRE(cfg.model_kind == ModelKind::Extended);
  REQUIRE(cfg.num_types_O == 1);
  REQUIRE(cfg.component_price(0, 0) == Catch::Approx(12000.0));
  REQUIRE(cfg.component_price(1, 0) == Catch::Approx(21000.0));
  REQUIRE(cfg.co2_price[0] == Catch::Approx(45.0));
  REQUIRE_FALSE(cfg.emissions_operation.empty());
}

TEST_CASE("scenario files round-trip") {
  const std::string path = "roundtrip.scn";
  for (const ScenarioConfig& cfg : {case1(3), case2()}) {
    save(cfg, path);
    const ScenarioConfig back = load(path);
    REQUIRE(back.model_kind == cfg.model_kind);
    REQUIRE(back.horizon_T == cfg.horizon_T);
    REQUIRE(back.max_age_N == cfg.max_age_N);
    REQUIRE(back.num_types_O == cfg.num_types_O);
    REQUIRE(back.demand == cfg.demand);
    REQUIRE(back.purchase_price.raw() == cfg.purchase_price.raw());
    REQUIRE(back.usage.raw() == cfg.usage.raw());
    if (cfg.model_kind == ModelKind::Extended) {
      REQUIRE(back.component_price.raw() == cfg.component_price.raw());
      REQUIRE(back.emissions_operation.raw() ==
              cfg.emissions_operation.raw());
    }
  }
  std::remove(path.c_str());
}

TEST_CASE("loader reports parse errors with location") {
  const std::string path = "broken.scn";
  {
    std::ofstream out(path);
    out << "fleetopt-scenario 1\n";
    out << "model_kind = base\n";
    out << "horizon_T = not-a-number\n";
  }
  try {
    load(path);
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    REQUIRE(std::string(e.what()).find(":3:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("horizon scaling repeats final values and drops discounting") {
  const ScenarioConfig base = case1(7);
  const ScenarioConfig big = scale_horizon(base, 10);
  REQUIRE(big.horizon_T == 10);
  REQUIRE(big.discount_rate == 0.0);
  REQUIRE(big.demand.size() == 11);
  REQUIRE(big.demand[9] == Catch::Approx(base.demand[2]));
  REQUIRE(big.demand[10] == Catch::Approx(base.demand[3]));
  REQUIRE(big.purchase_price(0, 4, 9) ==
          Catch::Approx(base.purchase_price(0, 4, 3)));
  REQUIRE_THROWS_AS(scale_horizon(base, 2), ScenarioError);
}
