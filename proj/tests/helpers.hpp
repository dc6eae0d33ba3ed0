#ifndef FLEETOPT_TESTS_HELPERS_HPP
#define FLEETOPT_TESTS_HELPERS_HPP

#include <algorithm>
#include <random>

#include "fleetopt/model.hpp"

namespace testutil {

// Randomized tiny base-model instance for oracle-equivalence checks.
// Constructed so that
//  - prices are nonincreasing in age and constant over periods, with
//    salvage <= price, so holding surplus assets is never profitable and
//    a minimal-transaction schedule is optimal;
//  - demand fits within small deployment counts (every per-slot optimum
//    is <= 4), matching the brute-force search box;
//  - no age-0 initial fleet.
inline fleetopt::ScenarioConfig random_tiny_scenario(std::mt19937_64& rng) {
  using fleetopt::Grid3;
  fleetopt::ScenarioConfig cfg;
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  cfg.horizon_T = pick(1, 2);
  cfg.max_age_N = pick(1, 2);
  cfg.num_types_O = pick(0, 1);
  cfg.discount_rate = pick(0, 1) ? 0.05 : 0.0;
  cfg.model_kind = fleetopt::ModelKind::Base;

  const int no = cfg.num_types_O + 1;
  const int ni = cfg.max_age_N + 1;
  const int nj = cfg.horizon_T + 1;
  cfg.purchase_price = Grid3<double>(no, ni, nj);
  cfg.salvage = Grid3<double>(no, ni, nj);
  cfg.usage = Grid3<double>(no, ni, nj);
  cfg.om_cost = Grid3<double>(no, ni, nj);
  cfg.initial_fleet = Grid3<double>(no, ni, 1);

  int min_usage = 1 << 30;
  for (int o = 0; o < no; ++o) {
    double price = pick(10, 20);
    const double resale_frac = 0.25 * pick(0, 4);
    for (int i = 0; i < ni; ++i) {
      const double salvage = std::floor(price * resale_frac);
      const int usage = (i < cfg.max_age_N) ? pick(1, 3) : 0;
      const int om = pick(0, 5);
      for (int j = 0; j < nj; ++j) {
        cfg.purchase_price(o, i, j) = price;
        cfg.salvage(o, i, j) = salvage;
        cfg.usage(o, i, j) = usage;
        cfg.om_cost(o, i, j) = om;
      }
      if (i < cfg.max_age_N) min_usage = std::min(min_usage, usage);
      price = std::max(1.0, price - pick(0, 3));
    }
  }
  // Up to two inherited assets at one random nonzero age.
  cfg.initial_fleet(pick(0, no - 1), pick(1, cfg.max_age_N), 0) = pick(0, 2);

  cfg.demand.assign(nj, 0.0);
  for (int j = 0; j < cfg.horizon_T; ++j)
    cfg.demand[j] = pick(0, 2 * min_usage);
  cfg.fixed_cost = {static_cast<double>(pick(0, 3))};
  return fleetopt::validate_scenario(cfg);
}

}  // namespace testutil

#endif  // FLEETOPT_TESTS_HELPERS_HPP
