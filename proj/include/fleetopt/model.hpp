#ifndef FLEETOPT_MODEL_HPP
#define FLEETOPT_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fleetopt/grid.hpp"

namespace fleetopt {

enum class ModelKind { Base, Extended };

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout, MemoryLimit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::MemoryLimit: return "memory_limit";
  }
  return "?";
}

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full parameter set of one problem instance. Index conventions:
// type o in 0..O, age i in 0..N, period j in 0..T. Decisions happen at
// every period; deployment only for j < T and i < N.
//
// Tables may be stored with reduced shape (constant, age-only, ...);
// validate_scenario broadcasts them to (O+1) x (N+1) x (T+1).
struct ScenarioConfig {
  int horizon_T = 0;
  int max_age_N = 0;
  int num_types_O = 0;
  double discount_rate = 0.0;
  ModelKind model_kind = ModelKind::Base;

  Grid3<double> purchase_price;  // p[o][i][j]
  std::vector<double> fixed_cost;  // k[j]
  Grid3<double> om_cost;         // c[o][i][j], per deployed asset-period
  Grid3<double> salvage;         // r[o][i][j]
  Grid3<double> usage;           // u[o][i][j], capacity per deployment
  std::vector<double> demand;    // d[j]
  Grid3<double> initial_fleet;   // h[o][i] (period dim broadcast, unused)

  // Extended-only tables; zero-filled for Base scenarios.
  Grid2<double> emissions_production;  // ep[o][j], tons
  Grid2<double> emissions_operation;   // en[o][j], tons per deployment-period
  Grid2<double> emissions_disposal;    // es[o][j], tons
  std::vector<double> co2_price;       // ec[j]
  std::vector<double> component_stock; // hk[o]
  Grid2<double> component_price;       // pk[o][j]
  Grid2<double> component_resale;      // rk[o][j]
  Grid2<double> install_cost;          // cm[o][j]
  Grid2<double> removal_cost;          // cd[o][j]

  double discount_factor() const { return 1.0 / (1.0 + discount_rate); }
  int types() const { return num_types_O + 1; }
  int ages() const { return max_age_N + 1; }
  int periods() const { return horizon_T + 1; }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) =
      default;
};

// Decision tensors for either model kind. Scalar type is generic so the
// same structure carries integer plans, fractional plans and autodiff
// variables.
template <class T>
struct BasicPlan {
  Grid3<T> v;             // deployed
  Grid3<T> b;             // purchased
  Grid3<T> s;             // sold
  std::vector<T> delta;   // purchase indicator per period
  Grid3<T> m;             // components installed (Extended)
  Grid3<T> dm;            // components removed (Extended)
  Grid2<T> bk;            // components purchased (Extended)
  Grid2<T> sk;            // components sold (Extended)
  Grid2<T> inv;           // component inventory (Extended)

  static BasicPlan zeros(const ScenarioConfig& cfg) {
    BasicPlan p;
    const std::size_t no = cfg.types(), ni = cfg.ages(), nj = cfg.periods();
    p.v = Grid3<T>(no, ni, nj);
    p.b = Grid3<T>(no, ni, nj);
    p.s = Grid3<T>(no, ni, nj);
    p.delta.assign(nj, T{});
    if (cfg.model_kind == ModelKind::Extended) {
      p.m = Grid3<T>(no, ni, nj);
      p.dm = Grid3<T>(no, ni, nj);
      p.bk = Grid2<T>(no, nj);
      p.sk = Grid2<T>(no, nj);
      p.inv = Grid2<T>(no, nj);
    }
    return p;
  }
};

using DecisionPlan = BasicPlan<double>;

// Objective decomposition. Signs: salvage and component_resale are revenues
// and enter total negatively; everything else is a cost.
struct CostReport {
  double purchase = 0.0;
  double fixed = 0.0;
  double om = 0.0;
  double salvage = 0.0;
  double environment_production = 0.0;
  double environment_operation = 0.0;
  double environment_disposal = 0.0;
  double upgrade_components = 0.0;
  double upgrade_labor = 0.0;
  double component_resale = 0.0;
  double total = 0.0;

  double signed_sum() const {
    return purchase + fixed + om - salvage + environment_production +
           environment_operation + environment_disposal + upgrade_components +
           upgrade_labor - component_resale;
  }
};

struct ViolationRecord {
  std::string constraint;       // provenance tag, e.g. "(5)" or "(25)"
  std::vector<int> index;       // offending (o, i, j) subset
  double residual = 0.0;

  std::string to_string() const {
    std::string s = constraint + " at (";
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(index[k]);
    }
    s += "): residual " + std::to_string(residual);
    return s;
  }
};

struct SolveResult {
  DecisionPlan plan;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<ViolationRecord> audit;
  std::map<std::string, double> telemetry;  // counters and wall seconds
};

namespace detail {

inline void check_nonneg(const Grid3<double>& g, const std::string& name) {
  for (std::size_t o = 0; o < g.num_types(); ++o)
    for (std::size_t i = 0; i < g.num_ages(); ++i)
      for (std::size_t j = 0; j < g.num_periods(); ++j)
        if (g(o, i, j) < 0.0)
          throw ScenarioError("negative parameter " + name + "[" +
                              std::to_string(o) + "][" + std::to_string(i) +
                              "][" + std::to_string(j) + "]");
}

inline void check_nonneg(const Grid2<double>& g, const std::string& name) {
  for (std::size_t o = 0; o < g.num_types(); ++o)
    for (std::size_t j = 0; j < g.num_periods(); ++j)
      if (g(o, j) < 0.0)
        throw ScenarioError("negative parameter " + name + "[" +
                            std::to_string(o) + "][" + std::to_string(j) +
                            "]");
}

inline void check_nonneg(const std::vector<double>& v,
                         const std::string& name) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] < 0.0)
      throw ScenarioError("negative parameter " + name + "[" +
                          std::to_string(j) + "]");
}

// Expand a reduced-shape table. Each dimension of size 1 broadcasts; an
// empty table expands to zeros. Reading a fully specified index never
// changes value under broadcasting.
inline Grid3<double> broadcast3(const Grid3<double>& g, std::size_t no,
                                std::size_t ni, std::size_t nj,
                                const std::string& name) {
  if (g.empty()) return Grid3<double>(no, ni, nj, 0.0);
  const std::size_t go = g.num_types(), gi = g.num_ages(),
                    gj = g.num_periods();
  if ((go != 1 && go != no) || (gi != 1 && gi != ni) || (gj != 1 && gj != nj))
    throw ScenarioError("dimension mismatch in " + name + ": got " +
                        std::to_string(go) + "x" + std::to_string(gi) + "x" +
                        std::to_string(gj) + ", want " + std::to_string(no) +
                        "x" + std::to_string(ni) + "x" + std::to_string(nj));
  Grid3<double> out(no, ni, nj);
  for (std::size_t o = 0; o < no; ++o)
    for (std::size_t i = 0; i < ni; ++i)
      for (std::size_t j = 0; j < nj; ++j)
        out(o, i, j) = g(go == 1 ? 0 : o, gi == 1 ? 0 : i, gj == 1 ? 0 : j);
  return out;
}

inline Grid2<double> broadcast2(const Grid2<double>& g, std::size_t no,
                                std::size_t nj, const std::string& name) {
  if (g.empty()) return Grid2<double>(no, nj, 0.0);
  const std::size_t go = g.num_types(), gj = g.num_periods();
  if ((go != 1 && go != no) || (gj != 1 && gj != nj))
    throw ScenarioError("dimension mismatch in " + name + ": got " +
                        std::to_string(go) + "x" + std::to_string(gj) +
                        ", want " + std::to_string(no) + "x" +
                        std::to_string(nj));
  Grid2<double> out(no, nj);
  for (std::size_t o = 0; o < no; ++o)
    for (std::size_t j = 0; j < nj; ++j)
      out(o, j) = g(go == 1 ? 0 : o, gj == 1 ? 0 : j);
  return out;
}

inline std::vector<double> broadcast1(const std::vector<double>& v,
                                      std::size_t nj,
                                      const std::string& name) {
  if (v.empty()) return std::vector<double>(nj, 0.0);
  if (v.size() == 1) return std::vector<double>(nj, v[0]);
  if (v.size() == nj) return v;
  // Period vectors indexed j < T may be given with T entries.
  if (v.size() + 1 == nj) {
    std::vector<double> out = v;
    out.push_back(0.0);
    return out;
  }
  throw ScenarioError("dimension mismatch in " + name + ": got " +
                      std::to_string(v.size()) + " entries, want " +
                      std::to_string(nj));
}

}  // namespace detail

// Checks every ScenarioConfig invariant and normalizes table shapes.
// Idempotent: a validated config passes through unchanged.
inline ScenarioConfig validate_scenario(ScenarioConfig cfg) {
  if (cfg.horizon_T < 1) throw ScenarioError("horizon_T must be >= 1");
  if (cfg.max_age_N < 1) throw ScenarioError("max_age_N must be >= 1");
  if (cfg.num_types_O < 0) throw ScenarioError("num_types_O must be >= 0");
  if (cfg.discount_rate < 0.0)
    throw ScenarioError("negative parameter discount_rate");

  const std::size_t no = cfg.types(), ni = cfg.ages(), nj = cfg.periods();
  using namespace detail;
  cfg.purchase_price = broadcast3(cfg.purchase_price, no, ni, nj,
                                  "purchase_price");
  cfg.om_cost = broadcast3(cfg.om_cost, no, ni, nj, "om_cost");
  cfg.salvage = broadcast3(cfg.salvage, no, ni, nj, "salvage");
  cfg.usage = broadcast3(cfg.usage, no, ni, nj, "usage");
  cfg.initial_fleet = broadcast3(cfg.initial_fleet, no, ni, nj,
                                 "initial_fleet");
  cfg.fixed_cost = broadcast1(cfg.fixed_cost, nj, "fixed_cost");
  cfg.demand = broadcast1(cfg.demand, nj, "demand");
  cfg.co2_price = broadcast1(cfg.co2_price, nj, "co2_price");
  if (cfg.component_stock.empty())
    cfg.component_stock.assign(no, 0.0);
  if (cfg.component_stock.size() != no)
    throw ScenarioError("dimension mismatch in component_stock: got " +
                        std::to_string(cfg.component_stock.size()) +
                        " entries, want " + std::to_string(no));
  cfg.emissions_production = broadcast2(cfg.emissions_production, no, nj,
                                        "emissions_production");
  cfg.emissions_operation = broadcast2(cfg.emissions_operation, no, nj,
                                       "emissions_operation");
  cfg.emissions_disposal = broadcast2(cfg.emissions_disposal, no, nj,
                                      "emissions_disposal");
  cfg.component_price = broadcast2(cfg.component_price, no, nj,
                                   "component_price");
  cfg.component_resale = broadcast2(cfg.component_resale, no, nj,
                                    "component_resale");
  cfg.install_cost = broadcast2(cfg.install_cost, no, nj, "install_cost");
  cfg.removal_cost = broadcast2(cfg.removal_cost, no, nj, "removal_cost");

  check_nonneg(cfg.purchase_price, "purchase_price");
  check_nonneg(cfg.om_cost, "om_cost");
  check_nonneg(cfg.salvage, "salvage");
  check_nonneg(cfg.usage, "usage");
  check_nonneg(cfg.initial_fleet, "initial_fleet");
  check_nonneg(cfg.fixed_cost, "fixed_cost");
  check_nonneg(cfg.demand, "demand");
  check_nonneg(cfg.co2_price, "co2_price");
  check_nonneg(cfg.component_stock, "component_stock");
  check_nonneg(cfg.emissions_production, "emissions_production");
  check_nonneg(cfg.emissions_operation, "emissions_operation");
  check_nonneg(cfg.emissions_disposal, "emissions_disposal");
  check_nonneg(cfg.component_price, "component_price");
  check_nonneg(cfg.component_resale, "component_resale");
  check_nonneg(cfg.install_cost, "install_cost");
  check_nonneg(cfg.removal_cost, "removal_cost");

  if (cfg.model_kind == ModelKind::Base) {
    auto all_zero2 = [](const Grid2<double>& g) {
      for (double x : g.raw())
        if (x != 0.0) return false;
      return true;
    };
    if (!all_zero2(cfg.emissions_production) ||
        !all_zero2(cfg.emissions_operation) ||
        !all_zero2(cfg.emissions_disposal) ||
        !all_zero2(cfg.component_price) || !all_zero2(cfg.component_resale) ||
        !all_zero2(cfg.install_cost) || !all_zero2(cfg.removal_cost))
      throw ScenarioError("Base-kind scenario has nonzero extended tables");
    for (double x : cfg.component_stock)
      if (x != 0.0)
        throw ScenarioError("Base-kind scenario has nonzero component_stock");
    for (double x : cfg.co2_price)
      if (x != 0.0)
        throw ScenarioError("Base-kind scenario has nonzero co2_price");
  }
  return cfg;
}

}  // namespace fleetopt

#endif  // FLEETOPT_MODEL_HPP
