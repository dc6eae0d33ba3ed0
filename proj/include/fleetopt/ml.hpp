#ifndef FLEETOPT_ML_HPP
#define FLEETOPT_ML_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "fleetopt/ip_model.hpp"
#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"
#include "fleetopt/tape.hpp"

namespace fleetopt {

// Double overloads mirroring the Var kink conventions, so the derivation
// maps below instantiate for plain numbers as well.
inline double relu(double z) { return z > 0.0 ? z : 0.0; }
inline double min1(double z) { return z < 1.0 ? z : 1.0; }
inline double absval(double z) { return std::abs(z); }
inline double ste_floor(double z) { return std::floor(z); }

struct MlHyperparams {
  int iterations = 20000;
  int restarts = 16;
  int patience = 2000;       // iterations without a new minimum loss
  double learning_rate = 0.2;
  double penalty_weight = 0.0;  // <= 0: scale from scenario prices
  std::uint64_t seed = 12345;
  double time_limit_sec = 120.0;
  bool polish = true;           // greedy integer descent on the best plan
  int polish_max_slots = 2000;  // skip polish on larger tensors
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

// --------------------------------------------------------------------------
// Clamp of the relaxed deployment tensor onto its domain: nonnegative,
// nothing deployed at max age or in the settlement period.
// --------------------------------------------------------------------------
template <class T>
Grid3<T> project_deployment(const ScenarioConfig& cfg, const Grid3<T>& v) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  Grid3<T> out(O + 1, N + 1, Tn + 1);
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= Tn; ++j)
        out(o, i, j) = (i == N || j == Tn) ? T(0.0) : relu(v(o, i, j));
  return out;
}

template <class T>
Grid3<T> ste_round(const Grid3<T>& v) {
  Grid3<T> out = v;
  for (auto& z : out.raw()) z = ste_floor(z);
  return out;
}

namespace ml_detail {

// Stock arriving in slot (o, i, j) before this period's transactions.
template <class T>
T inflow(const ScenarioConfig& cfg, const Grid3<T>& v, int o, int i, int j) {
  if (j == 0) return T(cfg.initial_fleet(o, i, 0));
  if (i == 0) return T(0.0);
  return v(o, i - 1, j - 1);
}

}  // namespace ml_detail

// Minimal purchase/sale schedule realising a deployment tensor in the
// basic model; flow balance holds identically by construction.
template <class T>
BasicPlan<T> derive_base(const ScenarioConfig& cfg, const Grid3<T>& v) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  BasicPlan<T> p = BasicPlan<T>::zeros(cfg);
  p.v = v;
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= Tn; ++j) {
        const T prev = ml_detail::inflow(cfg, v, o, i, j);
        p.b(o, i, j) = relu(v(o, i, j) - prev);
        p.s(o, i, j) =
            (i == 0 && j > 0) ? T(0.0) : relu(prev - v(o, i, j));
      }
  for (int j = 0; j < Tn; ++j) {
    T tb(0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) tb += p.b(o, i, j);
    p.delta[j] = min1(tb);
  }
  p.delta[Tn] = T(0.0);
  return p;
}

// Extended-model derivation: vehicle transactions are aggregated over the
// configuration types and booked on type 0; component installs/removals,
// purchases, inventory and the final component sale follow.
template <class T>
BasicPlan<T> derive_extended(const ScenarioConfig& cfg, const Grid3<T>& v) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  BasicPlan<T> p = BasicPlan<T>::zeros(cfg);
  p.v = v;
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= Tn; ++j) {
      T net(0.0);
      for (int o = 0; o <= O; ++o)
        net += v(o, i, j) - ml_detail::inflow(cfg, v, o, i, j);
      p.b(0, i, j) = relu(net);
      p.s(0, i, j) = (i == 0 && j > 0) ? T(0.0) : relu(-net);
    }
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= Tn; ++j) {
        const T x = v(o, i, j) - ml_detail::inflow(cfg, v, o, i, j) +
                    p.s(o, i, j) - p.b(o, i, j);
        p.m(o, i, j) = relu(x);
        p.dm(o, i, j) = relu(-x);
      }
  for (int o = 0; o <= O; ++o) {
    T carried(cfg.component_stock[o]);
    for (int j = 0; j <= Tn; ++j) {
      T net(0.0);
      for (int i = 0; i <= N; ++i) net += p.m(o, i, j) - p.dm(o, i, j);
      p.bk(o, j) = relu(net - carried);
      if (j < Tn) {
        p.inv(o, j) = carried + p.bk(o, j) - net;
        p.sk(o, j) = T(0.0);
        carried = p.inv(o, j);
      } else {
        // Settlement: inventory closes at zero, leftovers are sold.
        p.inv(o, j) = T(0.0);
        p.sk(o, j) = carried + p.bk(o, j) - net;
      }
    }
  }
  for (int j = 0; j < Tn; ++j) {
    T tb(0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) tb += p.b(o, i, j);
    p.delta[j] = min1(tb);
  }
  p.delta[Tn] = T(0.0);
  return p;
}

template <class T>
BasicPlan<T> derive_plan(const ScenarioConfig& cfg, const Grid3<T>& v) {
  return cfg.model_kind == ModelKind::Base ? derive_base(cfg, v)
                                           : derive_extended(cfg, v);
}

// Residuals a derived plan can still violate: demand coverage, the
// purchase-indicator link, and the age-0 transaction rules when the
// initial fleet contains age-0 assets.
template <class T>
T penalty_value(const ScenarioConfig& cfg, const BasicPlan<T>& p,
                double weight) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  const double M = big_m(cfg);
  T pen(0.0);
  for (int j = 0; j < Tn; ++j) {
    T cap(0.0);
    T tb(0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        cap += p.v(o, i, j) * cfg.usage(o, i, j);
        tb += p.b(o, i, j);
      }
    pen += relu(T(cfg.demand[j]) - cap) * weight;
    pen += relu(tb - p.delta[j] * M) * weight;
  }
  for (int o = 0; o <= O; ++o) {
    if (cfg.initial_fleet(o, 0, 0) == 0.0) continue;
    pen += absval(p.b(o, 0, 0) - p.v(o, 0, 0)) * weight;
    pen += absval(p.s(o, 0, 0)) * weight;
  }
  return pen;
}

// Penalty scale: twice the cheapest discounted cost of adding one unit of
// demand coverage for a single period (buy, run, resell one period later).
inline double default_penalty_weight(const ScenarioConfig& cfg) {
  const double f = cfg.discount_factor();
  double best = std::numeric_limits<double>::infinity();
  double fallback = std::numeric_limits<double>::infinity();
  for (int o = 0; o <= cfg.num_types_O; ++o)
    for (int i = 0; i < cfg.max_age_N; ++i) {
      const double u = cfg.usage(o, i, 0);
      if (u <= 0.0) continue;
      const int inext = std::min(i + 1, cfg.max_age_N);
      const int jnext = std::min(1, cfg.horizon_T);
      double churn = cfg.purchase_price(o, i, 0) + f * cfg.om_cost(o, i, 0) -
                     f * cfg.salvage(o, inext, jnext);
      if (cfg.model_kind == ModelKind::Extended)
        churn += cfg.emissions_production(o, 0) * cfg.co2_price[0] +
                 f * cfg.emissions_operation(o, 0) * cfg.co2_price[0];
      fallback =
          std::min(fallback, (cfg.purchase_price(o, i, 0) +
                              f * cfg.om_cost(o, i, 0)) / u);
      if (churn > 0.0) best = std::min(best, churn / u);
    }
  if (std::isfinite(best)) return 2.0 * best;
  if (std::isfinite(fallback)) return 2.0 * fallback;
  return 1.0;
}

namespace ml_detail {

// Demand-covering warm start: age the initial fleet forward and top up
// each period with the highest-capacity slot available.
inline Grid3<double> heuristic_start(const ScenarioConfig& cfg) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  Grid3<double> v(O + 1, N + 1, Tn + 1, 0.0);
  Grid2<double> fleet(O + 1, N + 1, 0.0);
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i) fleet(o, i) = cfg.initial_fleet(o, i, 0);
  for (int j = 0; j < Tn; ++j) {
    double cap = 0.0;
    int bo = -1, bi = -1;
    double bu = 0.0;
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        cap += fleet(o, i) * cfg.usage(o, i, j);
        if (cfg.usage(o, i, j) > bu) {
          bu = cfg.usage(o, i, j);
          bo = o;
          bi = i;
        }
      }
    if (cap < cfg.demand[j] && bu > 0.0)
      fleet(bo, bi) += std::ceil((cfg.demand[j] - cap) / bu);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) v(o, i, j) = fleet(o, i);
    Grid2<double> next(O + 1, N + 1, 0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) next(o, i + 1) = fleet(o, i);
    fleet = next;
  }
  return v;
}

// Steady churn seed: cover every period's demand with one (type, age)
// slot alone. Together with the greedy descent this reaches the common
// steady-state optima directly.
inline Grid3<double> churn_start(const ScenarioConfig& cfg, int o, int i) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  Grid3<double> v(O + 1, N + 1, Tn + 1, 0.0);
  for (int j = 0; j < Tn; ++j) {
    const double u = cfg.usage(o, i, j);
    if (u > 0.0) v(o, i, j) = std::ceil(cfg.demand[j] / u);
  }
  return v;
}

struct EvalOutcome {
  bool feasible = false;
  double objective = 0.0;
};

inline EvalOutcome evaluate_rounded(const ScenarioConfig& cfg,
                                    const Grid3<double>& v) {
  const BasicPlan<double> p = derive_plan(cfg, v);
  EvalOutcome out;
  out.feasible = penalty_value(cfg, p, 1.0) < 1e-9;
  if (out.feasible) out.objective = total_cost_value(cfg, p);
  return out;
}

// Greedy integer descent over deployment moves that gradient steps
// struggle to make jointly: single increments, same-period swaps between
// two slots, and extending/shortening one asset's service along an
// (age+1, period+1) diagonal.
inline void polish_plan(const ScenarioConfig& cfg, Grid3<double>& v,
                        double& objective) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  using Move = std::vector<std::array<int, 4>>;  // (o, i, j, step)
  std::vector<Move> moves;
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < Tn; ++j) {
        moves.push_back({{o, i, j, 1}});
        moves.push_back({{o, i, j, -1}});
      }
  for (int j = 0; j < Tn; ++j)
    for (int o1 = 0; o1 <= O; ++o1)
      for (int i1 = 0; i1 < N; ++i1)
        for (int o2 = 0; o2 <= O; ++o2)
          for (int i2 = 0; i2 < N; ++i2) {
            if (o1 == o2 && i1 == i2) continue;
            // Unequal magnitudes let slots of different capacity trade
            // without a feasibility dip in between.
            for (int a = 1; a <= 3; ++a)
              for (int b = 1; b <= 3; ++b)
                moves.push_back({{o1, i1, j, a}, {o2, i2, j, -b}});
          }
  std::vector<std::vector<Move>> chains_by_window;  // keyed by (j, len)
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < Tn; ++j)
        for (int len = 1; len <= std::min(N - i, Tn - j); ++len) {
          Move grow, shrink;
          for (int k = 0; k < len; ++k) {
            grow.push_back({o, i + k, j + k, 1});
            shrink.push_back({o, i + k, j + k, -1});
          }
          if (len >= 2) {
            moves.push_back(grow);
            moves.push_back(shrink);
          }
          const std::size_t key =
              static_cast<std::size_t>(j) * (std::min(N, Tn) + 1) + len;
          if (chains_by_window.size() <= key) chains_by_window.resize(key + 1);
          chains_by_window[key].push_back(grow);
        }
  // Chain pairs: trade one asset's whole service interval for another
  // starting age or type over the same periods.
  for (const auto& group : chains_by_window)
    for (const Move& up : group)
      for (const Move& down : group) {
        if (&up == &down) continue;
        Move mv = up;
        for (auto [o, i, j, step] : down) mv.push_back({o, i, j, -step});
        moves.push_back(std::move(mv));
      }

  bool improved = true;
  int sweeps = 0;
  while (improved && sweeps++ < 200) {
    improved = false;
    for (const Move& mv : moves) {
      bool lower_ok = true;
      for (const auto& [o, i, j, step] : mv)
        if (v(o, i, j) + step < 0.0) lower_ok = false;
      if (!lower_ok) continue;
      for (const auto& [o, i, j, step] : mv) v(o, i, j) += step;
      const EvalOutcome e = evaluate_rounded(cfg, v);
      if (e.feasible && e.objective < objective - 1e-6) {
        objective = e.objective;
        improved = true;
      } else {
        for (const auto& [o, i, j, step] : mv) v(o, i, j) -= step;
      }
    }
  }
}

}  // namespace ml_detail

// Gradient-based heuristic solver: Adam on the relaxed deployment tensor,
// loss = relaxed total cost + weighted violations of the rounded plan
// (round uses a straight-through derivative), multiple restarts, then a
// greedy integer descent around the best rounded plan.
inline SolveResult solve_ml(const ScenarioConfig& cfg,
                            const MlHyperparams& hp = {}) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  const int O = cfg.num_types_O, N = cfg.max_age_N, Tn = cfg.horizon_T;
  const double weight = hp.penalty_weight > 0.0
                            ? hp.penalty_weight
                            : default_penalty_weight(cfg);
  const double M = big_m(cfg);

  std::vector<std::array<int, 3>> slots;  // optimised coordinates of v
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < Tn; ++j) slots.push_back({o, i, j});
  const std::size_t ns = slots.size();

  double best_obj = std::numeric_limits<double>::infinity();
  Grid3<double> best_v;
  double restart_obj = std::numeric_limits<double>::infinity();
  Grid3<double> restart_v;
  std::int64_t total_iters = 0;
  bool timed_out = false;

  Tape tape;
  std::vector<double> raw(ns), am(ns), av(ns), grad(ns);
  for (int r = 0; r < hp.restarts && !timed_out; ++r) {
    // Restart schedule: demand-covering warm start, then one steady-churn
    // seed per usable (type, age) slot, then uniform random tensors.
    std::vector<std::pair<int, int>> churn_slots;
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i)
        if (cfg.usage(o, i, 0) > 0.0) churn_slots.push_back({o, i});
    if (r == 0) {
      const Grid3<double> h0 = ml_detail::heuristic_start(cfg);
      for (std::size_t k = 0; k < ns; ++k) {
        const auto& [o, i, j] = slots[k];
        raw[k] = h0(o, i, j);
      }
    } else if (static_cast<std::size_t>(r) <= churn_slots.size()) {
      const auto& [co, ci] = churn_slots[r - 1];
      const Grid3<double> c0 = ml_detail::churn_start(cfg, co, ci);
      for (std::size_t k = 0; k < ns; ++k) {
        const auto& [o, i, j] = slots[k];
        raw[k] = c0(o, i, j);
      }
    } else {
      std::mt19937_64 rng(hp.seed + static_cast<std::uint64_t>(r));
      std::uniform_real_distribution<double> uni(0.0, M);
      for (std::size_t k = 0; k < ns; ++k) raw[k] = uni(rng);
    }
    std::fill(am.begin(), am.end(), 0.0);
    std::fill(av.begin(), av.end(), 0.0);
    restart_obj = std::numeric_limits<double>::infinity();
    double min_loss = std::numeric_limits<double>::infinity();
    int since_best = 0;
    double adam_t = 0.0;

    for (int it = 0; it < hp.iterations; ++it, ++total_iters) {
      if (it % 64 == 0 && elapsed() > hp.time_limit_sec) {
        timed_out = true;
        break;
      }
      tape.clear();
      TapeScope scope(tape);
      Grid3<Var> vraw(O + 1, N + 1, Tn + 1, Var(0.0));
      std::vector<Var> leaves(ns);
      for (std::size_t k = 0; k < ns; ++k) {
        leaves[k] = Var::leaf(raw[k]);
        const auto& [o, i, j] = slots[k];
        vraw(o, i, j) = leaves[k];
      }
      const Grid3<Var> vproj = project_deployment(cfg, vraw);
      const BasicPlan<Var> frac = derive_plan(cfg, vproj);
      const Grid3<Var> vr = ste_round(vproj);
      const BasicPlan<Var> rounded = derive_plan(cfg, vr);
      const Var loss = total_cost_value(cfg, frac) +
                       penalty_value(cfg, rounded, weight);

      if (penalty_value(cfg, rounded, 1.0).val < 1e-9) {
        const double robj = total_cost_value(cfg, rounded).val;
        if (robj < restart_obj - 1e-9) {
          restart_obj = robj;
          restart_v = Grid3<double>(O + 1, N + 1, Tn + 1, 0.0);
          for (int o = 0; o <= O; ++o)
            for (int i = 0; i <= N; ++i)
              for (int j = 0; j <= Tn; ++j)
                restart_v(o, i, j) = vr(o, i, j).val;
        }
      }
      if (loss.val < min_loss - std::abs(min_loss) * 1e-9) {
        min_loss = loss.val;
        since_best = 0;
      }
      if (++since_best > hp.patience) break;

      const std::vector<double> adj = tape.gradient(loss.idx);
      adam_t += 1.0;
      for (std::size_t k = 0; k < ns; ++k) {
        grad[k] = leaves[k].idx >= 0 ? adj[leaves[k].idx] : 0.0;
        am[k] = hp.adam_beta1 * am[k] + (1.0 - hp.adam_beta1) * grad[k];
        av[k] = hp.adam_beta2 * av[k] +
                (1.0 - hp.adam_beta2) * grad[k] * grad[k];
        const double mh = am[k] / (1.0 - std::pow(hp.adam_beta1, adam_t));
        const double vh = av[k] / (1.0 - std::pow(hp.adam_beta2, adam_t));
        raw[k] -= hp.learning_rate * mh / (std::sqrt(vh) + hp.adam_eps);
      }
    }
    if (std::isfinite(restart_obj)) {
      if (hp.polish && static_cast<int>(ns) <= hp.polish_max_slots)
        ml_detail::polish_plan(cfg, restart_v, restart_obj);
      if (restart_obj < best_obj - 1e-9) {
        best_obj = restart_obj;
        best_v = restart_v;
      }
    }
  }

  SolveResult res;
  res.telemetry["iterations"] = static_cast<double>(total_iters);
  res.telemetry["penalty_weight"] = weight;
  res.telemetry["restarts"] = hp.restarts;
  if (!std::isfinite(best_obj)) {
    res.status = timed_out ? SolveStatus::Timeout : SolveStatus::Infeasible;
    res.objective = std::numeric_limits<double>::quiet_NaN();
    res.telemetry["wall_time_sec"] = elapsed();
    return res;
  }
  res.plan = derive_plan(cfg, best_v);
  res.objective = total_cost_value(cfg, res.plan);
  res.status = SolveStatus::Feasible;
  res.audit = check_feasibility(cfg, res.plan);
  res.telemetry["wall_time_sec"] = elapsed();
  return res;
}

}  // namespace fleetopt

#endif  // FLEETOPT_ML_HPP
