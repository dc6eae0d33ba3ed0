// Long-running scaling-trend acceptance check: on the undiscounted
// variant of scenario 7 with the default horizon ladder, the exact
// solver's cost grows super-linearly until it DNFs, while the ML solver
// keeps finishing rungs with a bounded log-log slope.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <vector>

#include "fleetopt/bench.hpp"
#include "fleetopt/scenarios.hpp"

using namespace fleetopt;

TEST_CASE("criterion 7: scaling trends under 2 GB / 10 min caps") {
  const auto t0 = std::chrono::steady_clock::now();
  BenchOptions opt;  // default ladder {3,10,30,100,300,1000,3000}, 600 s, 2 GiB
  const std::vector<BenchRow> rows = run_scaling(case1(7), opt);
  const double total_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::vector<int> ladder = opt.ladder;
  std::map<int, double> exact_t, ml_t;
  int exact_dnf_rung = -1;  // index into the ladder
  for (const BenchRow& r : rows) {
    const int pos = static_cast<int>(
        std::find(ladder.begin(), ladder.end(), r.horizon) - ladder.begin());
    if (r.solver == "exact") {
      if (r.completed)
        exact_t[pos] = r.seconds;
      else
        exact_dnf_rung = pos;
    } else if (r.completed) {
      ml_t[pos] = r.seconds;
    }
  }
  for (const BenchRow& r : rows)
    UNSCOPED_INFO(r.horizon << " " << r.solver << " " << r.status << " "
                            << r.seconds << "s obj " << r.objective);

  // (a) Exact time ratios increase over the last three completed rungs.
  REQUIRE(exact_t.size() >= 3);
  {
    std::vector<double> t;
    for (const auto& [pos, sec] : exact_t) t.push_back(sec);
    const std::size_t n = t.size();
    const double r1 = t[n - 2] / std::max(t[n - 3], 1e-9);
    const double r2 = t[n - 1] / std::max(t[n - 2], 1e-9);
    CAPTURE(r1, r2);
    REQUIRE(r2 > r1);
  }

  // (b) The ML solver finishes at least two rungs past the exact DNF.
  REQUIRE(exact_dnf_rung >= 0);
  REQUIRE(ml_t.count(exact_dnf_rung + 1));
  REQUIRE(ml_t.count(exact_dnf_rung + 2));

  // (c) ML log-log slope over its largest completed decade.
  const int last_ml = ml_t.rbegin()->first;
  std::vector<BenchRow> decade;
  for (const BenchRow& r : rows)
    if (r.solver == "ml" && r.completed &&
        10 * r.horizon >= ladder[last_ml] && r.seconds > 0.0)
      decade.push_back(r);
  REQUIRE(decade.size() >= 2);
  const double slope = loglog_slope(decade, "ml");
  CAPTURE(slope);
  REQUIRE(slope <= 2.5);

  REQUIRE(total_sec <= 3600.0);
}
