#ifndef FLEETOPT_EXACT_HPP
#define FLEETOPT_EXACT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "fleetopt/ip_model.hpp"
#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/simplex.hpp"

namespace fleetopt {

struct BnbLimits {
  double time_limit_sec = 600.0;
  std::size_t memory_limit_bytes = std::size_t{2} << 30;  // 2 GiB
  std::int64_t max_nodes = 1'000'000;
};

namespace detail {

struct BnbNode {
  double bound;  // parent LP objective (lower bound for minimization)
  std::vector<double> lb, ub;
  bool operator>(const BnbNode& other) const { return bound > other.bound; }
};

inline bool integral(double v, double tol = 1e-6) {
  return std::abs(v - std::round(v)) <= tol;
}

}  // namespace detail

inline DecisionPlan plan_from_deployment(const ScenarioConfig& cfg,
                                         const Grid3<double>& v) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, T = cfg.horizon_T;
  DecisionPlan p = DecisionPlan::zeros(cfg);
  p.v = v;
  for (int o = 0; o <= O; ++o)
    for (int j = 0; j <= T; ++j)
      for (int i = 0; i <= N; ++i) {
        // Stock arriving in slot (i, j): initial fleet in period 0,
        // otherwise survivors ageing in from (i-1, j-1).
        double prev;
        if (j == 0) prev = cfg.initial_fleet(o, i, 0);
        else if (i == 0) prev = 0.0;
        else prev = v(o, i - 1, j - 1);
        const double keep = v(o, i, j);
        if (i == 0) {
          p.b(o, 0, j) = keep;  // age-0 stock exists only if purchased
          p.s(o, 0, j) = 0.0;
        } else {
          p.b(o, i, j) = std::max(0.0, keep - prev);
          p.s(o, i, j) = std::max(0.0, prev - keep);
        }
      }
  for (int j = 0; j <= T; ++j) {
    double total_b = 0.0;
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) total_b += p.b(o, i, j);
    p.delta[j] = total_b > 0.0 ? 1.0 : 0.0;
  }
  return p;
}

namespace detail {

// Integer rounding cuts for the demand rows: dividing a covering row
// sum(u * v) >= d by any positive usage u* and rounding the coefficients
// up keeps validity for integral v, and the right-hand side then rounds
// up too. These rows are implied by integrality, so they tighten the LP
// relaxation without changing the integer feasible set.
inline void add_rounding_cuts(IpInstance& inst, const ScenarioConfig& cfg) {
  const VarLayout L(cfg);
  std::vector<double> divisors;
  for (double u : cfg.usage.raw())
    if (u > 0.0 &&
        std::find(divisors.begin(), divisors.end(), u) == divisors.end())
      divisors.push_back(u);
  std::sort(divisors.begin(), divisors.end());
  const std::size_t base_rows = inst.rows.size();
  for (std::size_t r = 0; r < base_rows; ++r) {
    const IpRow row = inst.rows[r];  // copy: push_back below reallocates
    if (row.rel != Rel::Ge) continue;
    const int j = row.index[0];
    for (double d : divisors) {
      IpRow cut;
      cut.tag = "(cut)";
      cut.index = {j};
      cut.rel = Rel::Ge;
      cut.rhs = std::ceil(row.rhs / d - 1e-9);
      bool same = true;
      for (const auto& [k, a] : row.coefs) {
        const double coef = std::ceil(a / d - 1e-9);
        if (coef != a) same = false;
        if (coef != 0.0) cut.coefs.push_back({k, coef});
      }
      if (!same || cut.rhs != row.rhs) inst.rows.push_back(std::move(cut));
    }
  }
}

// Auxiliary total-fleet variables: F_j = sum of all deployments in period
// j. Implied integral, objective-free, and branching on them first acts on
// whole covers of the demand row instead of single tensor entries.
inline int add_fleet_aggregates(IpInstance& inst, const ScenarioConfig& cfg) {
  const VarLayout L(cfg);
  const int first = static_cast<int>(inst.num_vars());
  const double M = big_m(cfg);
  for (int j = 0; j < L.T; ++j) {
    inst.vars.push_back(
        {"fleet[" + std::to_string(j) + "]", {-1, -1, j}, 0.0, M});
    inst.objective.push_back(0.0);
    IpRow r;
    r.tag = "(aux)";
    r.index = {j};
    r.rel = Rel::Eq;
    r.rhs = 0.0;
    for (int o = 0; o <= L.O; ++o)
      for (int i = 0; i < L.N; ++i) r.coefs.push_back({L.v(o, i, j), 1.0});
    r.coefs.push_back({first + j, -1.0});
    inst.rows.push_back(std::move(r));
  }
  return first;
}

}  // namespace detail

// Best-bound branch and bound on the LP relaxation; branches on the
// variable whose fractional part is closest to 1/2 (lowest index on ties).
inline SolveResult solve_bnb(const ScenarioConfig& cfg,
                             const BnbLimits& limits = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  IpInstance inst = build_instance(cfg);
  detail::add_rounding_cuts(inst, cfg);
  const int first_aux = detail::add_fleet_aggregates(inst, cfg);
  const int n = static_cast<int>(inst.num_vars());

  SolveResult res;
  res.status = SolveStatus::Infeasible;
  res.objective = std::numeric_limits<double>::quiet_NaN();

  detail::BnbNode root;
  root.bound = -std::numeric_limits<double>::infinity();
  root.lb.resize(n);
  root.ub.resize(n);
  for (int k = 0; k < n; ++k) {
    root.lb[k] = inst.vars[k].lb;
    root.ub[k] = inst.vars[k].ub;
  }

  std::priority_queue<detail::BnbNode, std::vector<detail::BnbNode>,
                      std::greater<detail::BnbNode>>
      open;
  open.push(std::move(root));

  double incumbent = std::numeric_limits<double>::infinity();
  std::vector<double> incumbent_x;
  const VarLayout layout(cfg);
  std::int64_t nodes = 0, lp_iters = 0;
  bool hit_time = false, hit_mem = false;
  const std::size_t node_bytes = 2u * sizeof(double) * n + 64;

  auto interrupted = [&] { return elapsed() > limits.time_limit_sec; };

  while (!open.empty()) {
    if (elapsed() > limits.time_limit_sec) { hit_time = true; break; }
    if (nodes >= limits.max_nodes) { hit_time = true; break; }

    detail::BnbNode node = open.top();
    open.pop();
    if (node.bound >= incumbent - 1e-9 * (1.0 + std::abs(incumbent)))
      continue;  // cannot improve
    ++nodes;

    BoundedSimplex sx(inst, node.lb, node.ub);
    if (sx.memory_bytes() + open.size() * node_bytes >
        limits.memory_limit_bytes) {
      hit_mem = true;
      break;
    }
    LpResult lp = sx.solve(-1, interrupted);
    lp_iters += lp.iterations;
    if (lp.status == LpStatus::Interrupted) { hit_time = true; break; }
    if (lp.status != LpStatus::Optimal) continue;  // infeasible: prune
    if (lp.objective >= incumbent - 1e-9 * (1.0 + std::abs(incumbent)))
      continue;

    // Rounding heuristic near the top of the tree: ceil the relaxed
    // deployment (capacity can only grow), rebuild the minimal
    // transaction schedule, and adopt it if it audits clean.
    if (nodes <= 64 || nodes % 256 == 0) {
      Grid3<double> vc(layout.O + 1, layout.N + 1, layout.T + 1, 0.0);
      for (int o = 0; o <= layout.O; ++o)
        for (int i = 0; i < layout.N; ++i)
          for (int j = 0; j < layout.T; ++j)
            vc(o, i, j) = std::ceil(lp.x[layout.v(o, i, j)] - 1e-9);
      const DecisionPlan hplan = plan_from_deployment(cfg, vc);
      if (check_feasibility(cfg, hplan).empty()) {
        const std::vector<double> hx = vector_from_plan(cfg, hplan);
        double hobj = 0.0;
        for (std::size_t k = 0; k < hx.size(); ++k)
          hobj += inst.objective[k] * hx[k];
        if (hobj < incumbent) {
          incumbent = hobj;
          incumbent_x = hx;
        }
      }
    }

    // Pick the branching variable: fixed-cost indicators first (they move
    // the bound the most), then lookahead ("strong") branching over the
    // most fractional deployment entries.
    int branch = -1;
    double best_score = -1.0;
    for (int j = 0; j < layout.T; ++j) {
      const int k = layout.delta(j);
      if (detail::integral(lp.x[k])) continue;
      const double score = 0.5 - std::abs(lp.x[k] - std::floor(lp.x[k]) - 0.5);
      if (score > best_score + 1e-12) {
        best_score = score;
        branch = k;
      }
    }
    if (branch < 0)
      for (int k = first_aux; k < n; ++k) {
        if (detail::integral(lp.x[k])) continue;
        const double score =
            0.5 - std::abs(lp.x[k] - std::floor(lp.x[k]) - 0.5);
        if (score > best_score + 1e-12) {
          best_score = score;
          branch = k;
        }
      }
    if (branch < 0) {
      std::vector<std::pair<double, int>> cand;
      for (int k = 0; k < n; ++k) {
        if (detail::integral(lp.x[k])) continue;
        const double frac = lp.x[k] - std::floor(lp.x[k]);
        cand.push_back({0.5 - std::abs(frac - 0.5), k});
      }
      std::sort(cand.begin(), cand.end(),
                [](const auto& a, const auto& b) {
                  return a.first > b.first ||
                         (a.first == b.first && a.second < b.second);
                });
      const std::size_t look = std::min<std::size_t>(cand.size(), 8);
      double best_gain = -1.0;
      for (std::size_t c = 0; c < look; ++c) {
        const int k = cand[c].second;
        double child_bound[2];
        for (int side = 0; side < 2; ++side) {
          std::vector<double> lb = node.lb, ub = node.ub;
          if (side == 0) ub[k] = std::floor(lp.x[k]);
          else lb[k] = std::ceil(lp.x[k]);
          BoundedSimplex child(inst, lb, ub);
          const LpResult clp = child.solve(3000, interrupted);
          lp_iters += clp.iterations;
          child_bound[side] = clp.status == LpStatus::Optimal
                                  ? clp.objective
                                  : std::numeric_limits<double>::infinity();
        }
        const double gain = std::min(child_bound[0], child_bound[1]);
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          branch = k;
        }
      }
      if (branch < 0 && !cand.empty()) branch = cand.front().second;
    }
    if (branch < 0) {  // integral solution
      if (lp.objective < incumbent) {
        incumbent = lp.objective;
        incumbent_x = lp.x;
        for (double& v : incumbent_x) v = std::round(v);
      }
      continue;
    }
    const double val = lp.x[branch];
    detail::BnbNode down{lp.objective, node.lb, node.ub};
    down.ub[branch] = std::floor(val);
    detail::BnbNode up{lp.objective, std::move(node.lb), std::move(node.ub)};
    up.lb[branch] = std::ceil(val);
    if (down.lb[branch] <= down.ub[branch]) open.push(std::move(down));
    if (up.lb[branch] <= up.ub[branch]) open.push(std::move(up));
  }

  res.telemetry["nodes"] = static_cast<double>(nodes);
  res.telemetry["lp_iterations"] = static_cast<double>(lp_iters);
  res.telemetry["wall_time_sec"] = elapsed();
  if (std::isfinite(incumbent)) {
    res.plan = plan_from_vector(cfg, incumbent_x);
    res.objective = incumbent;
    res.audit = check_feasibility(cfg, res.plan);
    if (hit_time || hit_mem || !open.empty())
      res.status = SolveStatus::Feasible;  // proven feasible, not optimal
    else
      res.status = SolveStatus::Optimal;
  } else if (hit_mem) {
    res.status = SolveStatus::MemoryLimit;
  } else if (hit_time) {
    res.status = SolveStatus::Timeout;
  }
  return res;
}

// --------------------------------------------------------------------------
// Brute-force oracle for tiny Base-kind instances.
//
// Enumerates every integral deployment tensor v within a small box, derives
// the minimal purchase/sale schedule that realises it, and keeps the
// cheapest capacity-feasible plan. The derived schedule never buys and
// sells the same slot simultaneously, which is cost-optimal whenever the
// resale table does not exceed the purchase table entrywise.
// --------------------------------------------------------------------------

inline SolveResult brute_force(const ScenarioConfig& cfg, int box = 4) {
  if (cfg.model_kind != ModelKind::Base)
    throw std::invalid_argument("brute_force supports Base scenarios only");
  const int O = cfg.num_types_O, N = cfg.max_age_N, T = cfg.horizon_T;

  // Free coordinates of v: i < N and j < T (all others are pinned to 0).
  std::vector<std::array<int, 3>> slots;
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < T; ++j) slots.push_back({o, i, j});

  SolveResult res;
  res.status = SolveStatus::Infeasible;
  res.objective = std::numeric_limits<double>::quiet_NaN();

  Grid3<double> v(O + 1, N + 1, T + 1, 0.0);
  std::vector<int> digits(slots.size(), 0);
  const std::int64_t radix = box + 1;
  std::int64_t count = 1;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (count > (std::int64_t{1} << 40) / radix)
      throw std::invalid_argument("brute_force instance too large");
    count *= radix;
  }
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t c = code;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      digits[k] = static_cast<int>(c % radix);
      c /= radix;
      const auto& [o, i, j] = slots[k];
      v(o, i, j) = digits[k];
    }
    bool feasible = true;
    for (int j = 0; j < T && feasible; ++j) {
      double cap = 0.0;
      for (int o = 0; o <= O; ++o)
        for (int i = 0; i < N; ++i) cap += cfg.usage(o, i, j) * v(o, i, j);
      feasible = cap >= cfg.demand[j] - 1e-9;
    }
    if (!feasible) continue;
    DecisionPlan plan = plan_from_deployment(cfg, v);
    const double obj = total_cost(cfg, plan).signed_sum();
    if (!(obj < res.objective) && res.status != SolveStatus::Infeasible)
      continue;
    if (res.status == SolveStatus::Infeasible || obj < res.objective) {
      res.plan = plan;
      res.objective = obj;
      res.status = SolveStatus::Optimal;
    }
  }
  if (res.status == SolveStatus::Optimal)
    res.audit = check_feasibility(cfg, res.plan);
  return res;
}

}  // namespace fleetopt

#endif  // FLEETOPT_EXACT_HPP
