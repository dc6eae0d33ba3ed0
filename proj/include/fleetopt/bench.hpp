#ifndef FLEETOPT_BENCH_HPP
#define FLEETOPT_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "fleetopt/exact.hpp"
#include "fleetopt/ml.hpp"
#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/scenarios.hpp"

namespace fleetopt {

struct BenchRow {
  int horizon = 0;
  std::string solver;
  int repetition = 1;
  std::string status;
  double seconds = 0.0;
  double objective = 0.0;
  // ML objective vs the exact objective at the same horizon; NaN when the
  // exact solver did not finish that horizon (and on exact rows).
  double discrepancy_percent = std::numeric_limits<double>::quiet_NaN();
  bool completed = false;
};

struct BenchOptions {
  std::vector<int> ladder = {3, 10, 30, 100, 300, 1000, 3000};
  int repetitions = 1;
  double time_limit_sec = 600.0;
  std::size_t memory_limit_bytes = std::size_t{2} << 30;
  bool run_exact = true;
  bool run_ml = true;
  MlHyperparams ml;  // iterations/restarts are the caller's choice

  BenchOptions() {
    ml.iterations = 2000;
    ml.restarts = 2;
    ml.patience = 500;
    ml.polish = false;  // keep per-rung cost a function of tensor size
  }
};

// Horizon-scaling study on one scenario. Each solver runs rung by rung
// under the time and memory caps and is dropped after its first DNF, so a
// slow configuration cannot consume the whole budget.
inline std::vector<BenchRow> run_scaling(const ScenarioConfig& base,
                                         const BenchOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  if (opt.repetitions < 1)
    throw ScenarioError("bench repetitions must be >= 1");
  for (std::size_t k = 1; k < opt.ladder.size(); ++k)
    if (opt.ladder[k] <= opt.ladder[k - 1])
      throw ScenarioError("bench horizons must be strictly increasing");
  std::vector<BenchRow> rows;
  std::map<int, double> exact_obj;  // completed exact objective per horizon
  auto timed = [&](auto&& fn) {
    const auto t0 = clock::now();
    SolveResult r = fn();
    const double sec =
        std::chrono::duration<double>(clock::now() - t0).count();
    return std::pair<SolveResult, double>(std::move(r), sec);
  };

  if (opt.run_exact) {
    for (int T : opt.ladder) {
      const ScenarioConfig cfg = scale_horizon(base, T);
      BnbLimits lim;
      lim.time_limit_sec = opt.time_limit_sec;
      lim.memory_limit_bytes = opt.memory_limit_bytes;
      bool dnf = false;
      for (int rep = 1; rep <= opt.repetitions && !dnf; ++rep) {
        auto [res, sec] = timed([&] { return solve_bnb(cfg, lim); });
        BenchRow row;
        row.horizon = T;
        row.solver = "exact";
        row.repetition = rep;
        row.status = to_string(res.status);
        row.seconds = sec;
        row.objective = res.objective;
        row.completed = res.status == SolveStatus::Optimal;
        rows.push_back(row);
        if (row.completed)
          exact_obj[T] = res.objective;
        else
          dnf = true;
      }
      if (dnf) break;
    }
  }
  if (opt.run_ml) {
    for (int T : opt.ladder) {
      const ScenarioConfig cfg = scale_horizon(base, T);
      MlHyperparams hp = opt.ml;
      hp.time_limit_sec = opt.time_limit_sec;
      bool dnf = false;
      for (int rep = 1; rep <= opt.repetitions && !dnf; ++rep) {
        auto [res, sec] = timed([&] { return solve_ml(cfg, hp); });
        BenchRow row;
        row.horizon = T;
        row.solver = "ml";
        row.repetition = rep;
        row.status = to_string(res.status);
        row.seconds = sec;
        row.objective = res.objective;
        row.completed = res.status == SolveStatus::Feasible;
        if (row.completed && exact_obj.count(T))
          row.discrepancy_percent = discrepancy(res.objective, exact_obj[T]);
        rows.push_back(row);
        if (!row.completed) dnf = true;
      }
      if (dnf) break;
    }
  }
  return rows;
}

inline void write_bench_csv(const std::vector<BenchRow>& rows,
                            std::ostream& os) {
  os << "horizon,solver,repetition,status,seconds,objective,"
        "discrepancy_percent\n";
  for (const BenchRow& r : rows) {
    os << r.horizon << "," << r.solver << "," << r.repetition << ","
       << r.status << "," << r.seconds << "," << r.objective << ",";
    if (!std::isnan(r.discrepancy_percent)) os << r.discrepancy_percent;
    os << "\n";
  }
}

// Median wall time of one solver's completed repetitions at one horizon.
inline double median_seconds(const std::vector<BenchRow>& rows,
                             const std::string& solver, int horizon) {
  std::vector<double> t;
  for (const BenchRow& r : rows)
    if (r.solver == solver && r.horizon == horizon && r.completed)
      t.push_back(r.seconds);
  if (t.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  return (n % 2) ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
}

// Least-squares slope of log(seconds) against log(horizon) over completed
// rungs of one solver; quantifies empirical time complexity.
inline double loglog_slope(const std::vector<BenchRow>& rows,
                           const std::string& solver) {
  std::vector<double> xs, ys;
  for (const BenchRow& r : rows)
    if (r.solver == solver && r.completed && r.seconds > 0.0) {
      xs.push_back(std::log(static_cast<double>(r.horizon)));
      ys.push_back(std::log(r.seconds));
    }
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fleetopt

#endif  // FLEETOPT_BENCH_HPP
