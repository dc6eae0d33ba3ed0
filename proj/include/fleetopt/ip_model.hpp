#ifndef FLEETOPT_IP_MODEL_HPP
#define FLEETOPT_IP_MODEL_HPP

#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"

namespace fleetopt {

enum class Rel { Le, Eq, Ge };

struct IpVariable {
  std::string name;           // e.g. "v[0][3][1]"
  std::array<int, 3> index;   // (o, i, j); unused slots -1
  double lb = 0.0;
  double ub = 0.0;
};

struct IpRow {
  std::vector<std::pair<int, double>> coefs;  // (variable index, coefficient)
  Rel rel = Rel::Eq;
  double rhs = 0.0;
  std::string tag;        // paper constraint, e.g. "(8)"
  std::vector<int> index; // instance of the constraint family
};

// Canonical linear IP: minimize obj'x subject to rows, x integral in
// [lb, ub] per variable. objective_constant carries plan-independent terms
// (there are none in these models, kept for generality).
struct IpInstance {
  std::vector<IpVariable> vars;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<IpRow> rows;

  std::size_t num_vars() const { return vars.size(); }
};

// Fixed variable ordering shared by the builders, the feasibility auditor
// and the exact solver: v, b, s blocks in (o, i, j) order, then delta[j]
// for j < T, then (Extended) m, dm, bk, sk, inv.
struct VarLayout {
  int O, N, T;
  bool extended;

  explicit VarLayout(const ScenarioConfig& cfg)
      : O(cfg.num_types_O), N(cfg.max_age_N), T(cfg.horizon_T),
        extended(cfg.model_kind == ModelKind::Extended) {}

  int grid() const { return (O + 1) * (N + 1) * (T + 1); }
  int at(int o, int i, int j) const { return (o * (N + 1) + i) * (T + 1) + j; }

  int v(int o, int i, int j) const { return at(o, i, j); }
  int b(int o, int i, int j) const { return grid() + at(o, i, j); }
  int s(int o, int i, int j) const { return 2 * grid() + at(o, i, j); }
  int delta(int j) const { return 3 * grid() + j; }
  int m(int o, int i, int j) const { return 3 * grid() + T + at(o, i, j); }
  int dm(int o, int i, int j) const { return 4 * grid() + T + at(o, i, j); }
  int bk(int o, int j) const {
    return 5 * grid() + T + o * (T + 1) + j;
  }
  int sk(int o, int j) const {
    return 5 * grid() + T + (O + 1) * (T + 1) + o * (T + 1) + j;
  }
  int inv(int o, int j) const {
    return 5 * grid() + T + 2 * (O + 1) * (T + 1) + o * (T + 1) + j;
  }

  int total() const {
    return extended ? 5 * grid() + T + 3 * (O + 1) * (T + 1)
                    : 3 * grid() + T;
  }
};

// Purchase-indicator constant: a valid bound on per-period purchases.
inline double big_m(const ScenarioConfig& cfg) {
  double min_usage = 0.0;
  for (double u : cfg.usage.raw())
    if (u > 0.0 && (min_usage == 0.0 || u < min_usage)) min_usage = u;
  double worst = 0.0;
  for (int j = 0; j < cfg.horizon_T; ++j) {
    const double d = cfg.demand[j];
    if (min_usage > 0.0) worst = std::max(worst, std::ceil(d / min_usage));
    else if (d > 0.0) worst = std::max(worst, d);
  }
  double fleet = 0.0;
  for (int o = 0; o <= cfg.num_types_O; ++o)
    for (int i = 0; i <= cfg.max_age_N; ++i) fleet += cfg.initial_fleet(o, i, 0);
  return worst + fleet;
}

namespace detail {

inline std::string var_name(const char* stem, int o, int i, int j) {
  std::string s = stem;
  if (o >= 0) s += "[" + std::to_string(o) + "]";
  if (i >= 0) s += "[" + std::to_string(i) + "]";
  if (j >= 0) s += "[" + std::to_string(j) + "]";
  return s;
}

inline void add_vars(IpInstance& inst, const ScenarioConfig& cfg,
                     const VarLayout& L) {
  const int O = L.O, N = L.N, T = L.T;
  const double M = big_m(cfg);
  inst.vars.resize(L.total());
  inst.objective.assign(L.total(), 0.0);
  auto set = [&](int idx, const char* stem, int o, int i, int j, double ub) {
    inst.vars[idx] = IpVariable{var_name(stem, o, i, j), {o, i, j}, 0.0, ub};
  };
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= T; ++j) {
        // v is structurally zero at max age and in the final period.
        const double vub = (i == N || j == T) ? 0.0 : M;
        set(L.v(o, i, j), "v", o, i, j, vub);
        set(L.b(o, i, j), "b", o, i, j, M);
        set(L.s(o, i, j), "s", o, i, j, M);
      }
  for (int j = 0; j < T; ++j) set(L.delta(j), "delta", -1, -1, j, 1.0);
  if (L.extended) {
    const double cm = (O + 1) * M;
    for (int o = 0; o <= O; ++o) {
      for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= T; ++j) {
          set(L.m(o, i, j), "m", o, i, j, cm);
          set(L.dm(o, i, j), "dm", o, i, j, cm);
        }
      for (int j = 0; j <= T; ++j) {
        set(L.bk(o, j), "bk", o, -1, j, cm);
        set(L.sk(o, j), "sk", o, -1, j, cm);
        set(L.inv(o, j), "inv", o, -1, j, cm);
      }
    }
  }
}

inline void add_objective(IpInstance& inst, const ScenarioConfig& cfg,
                          const VarLayout& L) {
  const int O = L.O, N = L.N, T = L.T;
  const double f = cfg.discount_factor();
  auto& c = inst.objective;
  double fj = 1.0;
  for (int j = 0; j < T; ++j, fj *= f) {
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        c[L.b(o, i, j)] += fj * cfg.purchase_price(o, i, j);
        c[L.v(o, i, j)] += fj * f * cfg.om_cost(o, i, j);
      }
    c[L.delta(j)] += fj * cfg.fixed_cost[j];
  }
  fj = 1.0;
  for (int j = 0; j <= T; ++j, fj *= f)
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i <= N; ++i)
        c[L.s(o, i, j)] -= fj * cfg.salvage(o, i, j);

  if (!L.extended) return;
  fj = 1.0;
  for (int j = 0; j < T; ++j, fj *= f)
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        c[L.b(o, i, j)] += fj * cfg.emissions_production(o, j) * cfg.co2_price[j];
        c[L.v(o, i, j)] += fj * f * cfg.emissions_operation(o, j) * cfg.co2_price[j];
      }
  fj = 1.0;
  for (int j = 0; j <= T; ++j, fj *= f)
    for (int o = 0; o <= O; ++o) {
      for (int i = 0; i <= N; ++i)
        c[L.s(o, i, j)] += fj * cfg.emissions_disposal(o, j) * cfg.co2_price[j];
      c[L.bk(o, j)] += fj * cfg.component_price(o, j);
      c[L.sk(o, j)] -= fj * cfg.component_resale(o, j);
      for (int i = 0; i <= N; ++i) {
        c[L.m(o, i, j)] += fj * cfg.install_cost(o, j);
        c[L.dm(o, i, j)] += fj * cfg.removal_cost(o, j);
      }
    }
}

inline IpRow row(std::string tag, std::vector<int> index, Rel rel,
                 double rhs) {
  IpRow r;
  r.tag = std::move(tag);
  r.index = std::move(index);
  r.rel = rel;
  r.rhs = rhs;
  return r;
}

}  // namespace detail

inline IpInstance build_base_instance(const ScenarioConfig& cfg) {
  if (cfg.model_kind != ModelKind::Base)
    throw std::invalid_argument("build_base_instance needs a Base scenario");
  const VarLayout L(cfg);
  const int O = L.O, N = L.N, T = L.T;
  const double M = big_m(cfg);
  IpInstance inst;
  detail::add_vars(inst, cfg, L);
  detail::add_objective(inst, cfg, L);
  using detail::row;

  for (int j = 0; j < T; ++j) {  // (5) capacity
    IpRow r = row("(5)", {j}, Rel::Ge, cfg.demand[j]);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i)
        r.coefs.push_back({L.v(o, i, j), cfg.usage(o, i, j)});
    inst.rows.push_back(std::move(r));
  }
  for (int o = 0; o <= O; ++o)
    for (int j = 0; j < T; ++j) {  // (6) immediate deployment
      IpRow r = row("(6)", {o, 0, j}, Rel::Eq, 0.0);
      r.coefs = {{L.b(o, 0, j), 1.0}, {L.v(o, 0, j), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int i = 1; i < N; ++i) {  // (7) initial flow balance
      IpRow r = row("(7)", {o, i, 0}, Rel::Eq, -cfg.initial_fleet(o, i, 0));
      r.coefs = {{L.b(o, i, 0), 1.0},
                 {L.v(o, i, 0), -1.0},
                 {L.s(o, i, 0), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int j = 1; j < T; ++j)
      for (int i = 1; i < N; ++i) {  // (8) period flow balance
        IpRow r = row("(8)", {o, i, j}, Rel::Eq, 0.0);
        r.coefs = {{L.v(o, i - 1, j - 1), 1.0},
                   {L.b(o, i, j), 1.0},
                   {L.v(o, i, j), -1.0},
                   {L.s(o, i, j), -1.0}};
        inst.rows.push_back(std::move(r));
      }
  for (int o = 0; o <= O; ++o) {  // (9) max-life initial sale
    IpRow r = row("(9)", {o, N, 0}, Rel::Eq, cfg.initial_fleet(o, N, 0));
    r.coefs = {{L.s(o, N, 0), 1.0}};
    inst.rows.push_back(std::move(r));
  }
  for (int o = 0; o <= O; ++o)
    for (int j = 1; j <= T; ++j) {  // (10) end-of-life sale
      IpRow r = row("(10)", {o, N, j}, Rel::Eq, 0.0);
      r.coefs = {{L.v(o, N - 1, j - 1), 1.0}, {L.s(o, N, j), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int i = 1; i < N; ++i) {  // (10) horizon-end sale of survivors
      IpRow r = row("(10)", {o, i, T}, Rel::Eq, 0.0);
      r.coefs = {{L.v(o, i - 1, T - 1), 1.0}, {L.s(o, i, T), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i) {  // (11) no final-period purchase
      IpRow r = row("(11)", {o, i, T}, Rel::Eq, 0.0);
      r.coefs = {{L.b(o, i, T), 1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int j = 0; j <= T; ++j) {  // (12) no immediate resale
      IpRow r = row("(12)", {o, 0, j}, Rel::Eq, 0.0);
      r.coefs = {{L.s(o, 0, j), 1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int j = 0; j < T; ++j) {  // (13) purchase indicator
    IpRow r = row("(13)", {j}, Rel::Le, 0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) r.coefs.push_back({L.b(o, i, j), 1.0});
    r.coefs.push_back({L.delta(j), -M});
    inst.rows.push_back(std::move(r));
  }
  return inst;
}

inline IpInstance build_extended_instance(const ScenarioConfig& cfg) {
  if (cfg.model_kind != ModelKind::Extended)
    throw std::invalid_argument(
        "build_extended_instance needs an Extended scenario");
  const VarLayout L(cfg);
  const int O = L.O, N = L.N, T = L.T;
  const double M = big_m(cfg);
  IpInstance inst;
  detail::add_vars(inst, cfg, L);
  detail::add_objective(inst, cfg, L);
  using detail::row;

  for (int j = 0; j < T; ++j) {  // (16) capacity
    IpRow r = row("(16)", {j}, Rel::Ge, cfg.demand[j]);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i)
        r.coefs.push_back({L.v(o, i, j), cfg.usage(o, i, j)});
    inst.rows.push_back(std::move(r));
  }
  for (int j = 0; j < T; ++j) {  // (17) aggregated immediate deployment
    IpRow r = row("(17)", {0, j}, Rel::Eq, 0.0);
    for (int o = 0; o <= O; ++o) {
      r.coefs.push_back({L.b(o, 0, j), 1.0});
      r.coefs.push_back({L.v(o, 0, j), -1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int i = 0; i <= N; ++i) {  // (18) aggregated initial flow
    double h = 0.0;
    for (int o = 0; o <= O; ++o) h += cfg.initial_fleet(o, i, 0);
    IpRow r = row("(18)", {i, 0}, Rel::Eq, -h);
    for (int o = 0; o <= O; ++o) {
      r.coefs.push_back({L.b(o, i, 0), 1.0});
      r.coefs.push_back({L.v(o, i, 0), -1.0});
      r.coefs.push_back({L.s(o, i, 0), -1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int j = 1; j <= T; ++j) {  // (19) age-0 flow, later periods
    IpRow r = row("(19)", {0, j}, Rel::Eq, 0.0);
    for (int o = 0; o <= O; ++o) {
      r.coefs.push_back({L.b(o, 0, j), 1.0});
      r.coefs.push_back({L.v(o, 0, j), -1.0});
      r.coefs.push_back({L.s(o, 0, j), -1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int j = 1; j <= T; ++j)
    for (int i = 1; i <= N; ++i) {  // (20) aggregated period flow
      IpRow r = row("(20)", {i, j}, Rel::Eq, 0.0);
      for (int o = 0; o <= O; ++o) {
        r.coefs.push_back({L.v(o, i - 1, j - 1), 1.0});
        r.coefs.push_back({L.b(o, i, j), 1.0});
        r.coefs.push_back({L.v(o, i, j), -1.0});
        r.coefs.push_back({L.s(o, i, j), -1.0});
      }
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i) {  // (21) upgrade dynamics, j = 0
      IpRow r = row("(21)", {o, i, 0}, Rel::Eq, -cfg.initial_fleet(o, i, 0));
      r.coefs = {{L.m(o, i, 0), 1.0},
                 {L.b(o, i, 0), 1.0},
                 {L.v(o, i, 0), -1.0},
                 {L.dm(o, i, 0), -1.0},
                 {L.s(o, i, 0), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int j = 1; j <= T; ++j) {  // (22) upgrade dynamics, age 0
      IpRow r = row("(22)", {o, 0, j}, Rel::Eq, 0.0);
      r.coefs = {{L.m(o, 0, j), 1.0},
                 {L.b(o, 0, j), 1.0},
                 {L.v(o, 0, j), -1.0},
                 {L.dm(o, 0, j), -1.0},
                 {L.s(o, 0, j), -1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int j = 1; j <= T; ++j)
      for (int i = 1; i <= N; ++i) {  // (23) upgrade dynamics, transitions
        IpRow r = row("(23)", {o, i, j}, Rel::Eq, 0.0);
        r.coefs = {{L.m(o, i, j), 1.0},
                   {L.b(o, i, j), 1.0},
                   {L.v(o, i, j), -1.0},
                   {L.v(o, i - 1, j - 1), 1.0},
                   {L.dm(o, i, j), -1.0},
                   {L.s(o, i, j), -1.0}};
        inst.rows.push_back(std::move(r));
      }
  for (int o = 0; o <= O; ++o) {  // (24) component stock, j = 0
    IpRow r = row("(24)", {o, 0}, Rel::Eq, cfg.component_stock[o]);
    r.coefs = {{L.inv(o, 0), 1.0}, {L.bk(o, 0), -1.0}, {L.sk(o, 0), 1.0}};
    for (int i = 0; i <= N; ++i) {
      r.coefs.push_back({L.dm(o, i, 0), -1.0});
      r.coefs.push_back({L.m(o, i, 0), 1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int o = 0; o <= O; ++o)
    for (int j = 1; j <= T; ++j) {  // (25) component balance
      IpRow r = row("(25)", {o, j}, Rel::Eq, 0.0);
      r.coefs = {{L.inv(o, j), 1.0},
                 {L.inv(o, j - 1), -1.0},
                 {L.bk(o, j), -1.0},
                 {L.sk(o, j), 1.0}};
      for (int i = 0; i <= N; ++i) {
        r.coefs.push_back({L.dm(o, i, j), -1.0});
        r.coefs.push_back({L.m(o, i, j), 1.0});
      }
      inst.rows.push_back(std::move(r));
    }
  {  // (26) aggregated max-life initial sale
    double h = 0.0;
    for (int o = 0; o <= O; ++o) h += cfg.initial_fleet(o, N, 0);
    IpRow r = row("(26)", {N, 0}, Rel::Eq, h);
    for (int o = 0; o <= O; ++o) r.coefs.push_back({L.s(o, N, 0), 1.0});
    inst.rows.push_back(std::move(r));
  }
  for (int j = 1; j <= T; ++j) {  // (27) aggregated end-of-life sale
    IpRow r = row("(27)", {N, j}, Rel::Eq, 0.0);
    for (int o = 0; o <= O; ++o) {
      r.coefs.push_back({L.v(o, N - 1, j - 1), 1.0});
      r.coefs.push_back({L.s(o, N, j), -1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int i = 1; i < N; ++i) {  // (27) horizon-end sale of survivors
    IpRow r = row("(27)", {i, T}, Rel::Eq, 0.0);
    for (int o = 0; o <= O; ++o) {
      r.coefs.push_back({L.v(o, i - 1, T - 1), 1.0});
      r.coefs.push_back({L.s(o, i, T), -1.0});
    }
    inst.rows.push_back(std::move(r));
  }
  for (int o = 0; o <= O; ++o)
    for (int i = 0; i <= N; ++i) {  // (28) no final-period purchase
      IpRow r = row("(28)", {o, i, T}, Rel::Eq, 0.0);
      r.coefs = {{L.b(o, i, T), 1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 0; o <= O; ++o)
    for (int j = 0; j <= T; ++j) {  // (29) no immediate resale
      IpRow r = row("(29)", {o, 0, j}, Rel::Eq, 0.0);
      r.coefs = {{L.s(o, 0, j), 1.0}};
      inst.rows.push_back(std::move(r));
    }
  for (int o = 1; o <= O; ++o)
    for (int i = 1; i <= N; ++i)
      for (int j = 0; j <= T; ++j) {  // (30)/(31) base-config transactions
        IpRow r30 = row("(30)", {o, i, j}, Rel::Eq, 0.0);
        r30.coefs = {{L.b(o, i, j), 1.0}};
        inst.rows.push_back(std::move(r30));
        IpRow r31 = row("(31)", {o, i, j}, Rel::Eq, 0.0);
        r31.coefs = {{L.s(o, i, j), 1.0}};
        inst.rows.push_back(std::move(r31));
      }
  for (int j = 0; j < T; ++j) {  // (32) purchase indicator
    IpRow r = row("(32)", {j}, Rel::Le, 0.0);
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) r.coefs.push_back({L.b(o, i, j), 1.0});
    r.coefs.push_back({L.delta(j), -M});
    inst.rows.push_back(std::move(r));
  }
  return inst;
}

inline IpInstance build_instance(const ScenarioConfig& cfg) {
  return cfg.model_kind == ModelKind::Base ? build_base_instance(cfg)
                                           : build_extended_instance(cfg);
}

// --------------------------------------------------------------------------
// Plan <-> flat solution vector
// --------------------------------------------------------------------------

inline std::vector<double> vector_from_plan(const ScenarioConfig& cfg,
                                            const DecisionPlan& plan) {
  const VarLayout L(cfg);
  std::vector<double> x(L.total(), 0.0);
  for (int o = 0; o <= L.O; ++o)
    for (int i = 0; i <= L.N; ++i)
      for (int j = 0; j <= L.T; ++j) {
        x[L.v(o, i, j)] = plan.v(o, i, j);
        x[L.b(o, i, j)] = plan.b(o, i, j);
        x[L.s(o, i, j)] = plan.s(o, i, j);
      }
  for (int j = 0; j < L.T; ++j) x[L.delta(j)] = plan.delta[j];
  if (L.extended && !plan.bk.empty()) {
    for (int o = 0; o <= L.O; ++o) {
      for (int i = 0; i <= L.N; ++i)
        for (int j = 0; j <= L.T; ++j) {
          x[L.m(o, i, j)] = plan.m(o, i, j);
          x[L.dm(o, i, j)] = plan.dm(o, i, j);
        }
      for (int j = 0; j <= L.T; ++j) {
        x[L.bk(o, j)] = plan.bk(o, j);
        x[L.sk(o, j)] = plan.sk(o, j);
        x[L.inv(o, j)] = plan.inv(o, j);
      }
    }
  }
  return x;
}

inline DecisionPlan plan_from_vector(const ScenarioConfig& cfg,
                                     const std::vector<double>& x) {
  const VarLayout L(cfg);
  DecisionPlan plan = DecisionPlan::zeros(cfg);
  for (int o = 0; o <= L.O; ++o)
    for (int i = 0; i <= L.N; ++i)
      for (int j = 0; j <= L.T; ++j) {
        plan.v(o, i, j) = x[L.v(o, i, j)];
        plan.b(o, i, j) = x[L.b(o, i, j)];
        plan.s(o, i, j) = x[L.s(o, i, j)];
      }
  for (int j = 0; j < L.T; ++j) plan.delta[j] = x[L.delta(j)];
  if (L.extended) {
    for (int o = 0; o <= L.O; ++o) {
      for (int i = 0; i <= L.N; ++i)
        for (int j = 0; j <= L.T; ++j) {
          plan.m(o, i, j) = x[L.m(o, i, j)];
          plan.dm(o, i, j) = x[L.dm(o, i, j)];
        }
      for (int j = 0; j <= L.T; ++j) {
        plan.bk(o, j) = x[L.bk(o, j)];
        plan.sk(o, j) = x[L.sk(o, j)];
        plan.inv(o, j) = x[L.inv(o, j)];
      }
    }
  }
  return plan;
}

// --------------------------------------------------------------------------
// Feasibility audit: direct evaluation of every constraint row plus domain
// bounds and integrality. Always returns a report, never throws on
// infeasibility.
// --------------------------------------------------------------------------

inline std::vector<ViolationRecord> check_feasibility(
    const ScenarioConfig& cfg, const DecisionPlan& plan,
    double tol = 1e-6) {
  const IpInstance inst = build_instance(cfg);
  const std::vector<double> x = vector_from_plan(cfg, plan);
  std::vector<ViolationRecord> out;
  for (const IpRow& r : inst.rows) {
    double lhs = 0.0;
    for (const auto& [k, a] : r.coefs) lhs += a * x[k];
    double residual = 0.0;
    switch (r.rel) {
      case Rel::Le: residual = lhs - r.rhs; break;
      case Rel::Ge: residual = r.rhs - lhs; break;
      case Rel::Eq: residual = std::abs(lhs - r.rhs); break;
    }
    if (residual > tol) out.push_back({r.tag, r.index, residual});
  }
  const char* domain_tag =
      cfg.model_kind == ModelKind::Base ? "(14)" : "(33)";
  for (std::size_t k = 0; k < inst.vars.size(); ++k) {
    const IpVariable& v = inst.vars[k];
    const std::vector<int> idx(v.index.begin(), v.index.end());
    if (x[k] < v.lb - tol) out.push_back({domain_tag, idx, v.lb - x[k]});
    if (x[k] > v.ub + tol) out.push_back({domain_tag, idx, x[k] - v.ub});
    if (std::abs(x[k] - std::round(x[k])) > tol)
      out.push_back({domain_tag, idx, std::abs(x[k] - std::round(x[k]))});
  }
  return out;
}

// Diagnostic LP-format export for cross-checking with external solvers.
inline void write_lp(const IpInstance& inst, std::ostream& os) {
  os << "Minimize\n obj:";
  for (std::size_t k = 0; k < inst.num_vars(); ++k) {
    const double c = inst.objective[k];
    if (c == 0.0) continue;
    os << (c >= 0 ? " + " : " - ") << std::abs(c) << " x" << k;
  }
  os << "\nSubject To\n";
  int n = 0;
  for (const IpRow& r : inst.rows) {
    os << " c" << n++ << ":";
    for (const auto& [k, a] : r.coefs)
      os << (a >= 0 ? " + " : " - ") << std::abs(a) << " x" << k;
    os << (r.rel == Rel::Le ? " <= " : r.rel == Rel::Ge ? " >= " : " = ")
       << r.rhs << "\n";
  }
  os << "Bounds\n";
  for (std::size_t k = 0; k < inst.num_vars(); ++k)
    os << " " << inst.vars[k].lb << " <= x" << k << " <= " << inst.vars[k].ub
       << "\n";
  os << "Generals\n";
  for (std::size_t k = 0; k < inst.num_vars(); ++k) os << " x" << k << "\n";
  os << "End\n";
}

}  // namespace fleetopt

#endif  // FLEETOPT_IP_MODEL_HPP
