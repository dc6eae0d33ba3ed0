#ifndef FLEETOPT_OBJECTIVE_HPP
#define FLEETOPT_OBJECTIVE_HPP

#include <cmath>
#include <stdexcept>

#include "fleetopt/model.hpp"

namespace fleetopt {

namespace detail {

inline void require_plan_shape(const ScenarioConfig& cfg,
                               std::size_t no, std::size_t ni,
                               std::size_t nj) {
  if (no != static_cast<std::size_t>(cfg.types()) ||
      ni != static_cast<std::size_t>(cfg.ages()) ||
      nj != static_cast<std::size_t>(cfg.periods()))
    throw std::invalid_argument("plan dimensions do not match scenario");
}

}  // namespace detail

// Generic accumulation over a plan of any scalar type. Summation ranges
// follow the objective exactly: purchases, fixed cost and O&M run over
// j <= T-1 and i <= N-1; salvage runs over the full j <= T, i <= N.
template <class T>
struct CostTerms {
  T purchase{};
  T fixed{};
  T om{};
  T salvage{};
  T environment_production{};
  T environment_operation{};
  T environment_disposal{};
  T upgrade_components{};
  T upgrade_labor{};
  T component_resale{};

  T total() const {
    return purchase + fixed + om - salvage + environment_production +
           environment_operation + environment_disposal + upgrade_components +
           upgrade_labor - component_resale;
  }
};

template <class T>
CostTerms<T> base_cost_terms(const ScenarioConfig& cfg,
                             const BasicPlan<T>& plan) {
  detail::require_plan_shape(cfg, plan.v.num_types(), plan.v.num_ages(),
                             plan.v.num_periods());
  const int O = cfg.num_types_O, N = cfg.max_age_N, Th = cfg.horizon_T;
  const double f = cfg.discount_factor();
  CostTerms<T> out;
  double fj = 1.0;
  for (int j = 0; j < Th; ++j, fj *= f) {
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        out.purchase = out.purchase + plan.b(o, i, j) * (fj * cfg.purchase_price(o, i, j));
        out.om = out.om + plan.v(o, i, j) * (fj * f * cfg.om_cost(o, i, j));
      }
    out.fixed = out.fixed + plan.delta[j] * (fj * cfg.fixed_cost[j]);
  }
  fj = 1.0;
  for (int j = 0; j <= Th; ++j, fj *= f)
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i <= N; ++i)
        out.salvage = out.salvage + plan.s(o, i, j) * (fj * cfg.salvage(o, i, j));
  return out;
}

template <class T>
CostTerms<T> environment_cost_terms(const ScenarioConfig& cfg,
                                    const BasicPlan<T>& plan) {
  detail::require_plan_shape(cfg, plan.v.num_types(), plan.v.num_ages(),
                             plan.v.num_periods());
  const int O = cfg.num_types_O, N = cfg.max_age_N, Th = cfg.horizon_T;
  const double f = cfg.discount_factor();
  CostTerms<T> out;
  double fj = 1.0;
  for (int j = 0; j < Th; ++j, fj *= f)
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i < N; ++i) {
        out.environment_production =
            out.environment_production +
            plan.b(o, i, j) * (fj * cfg.emissions_production(o, j) * cfg.co2_price[j]);
        out.environment_operation =
            out.environment_operation +
            plan.v(o, i, j) * (fj * f * cfg.emissions_operation(o, j) * cfg.co2_price[j]);
      }
  fj = 1.0;
  for (int j = 0; j <= Th; ++j, fj *= f)
    for (int o = 0; o <= O; ++o)
      for (int i = 0; i <= N; ++i)
        out.environment_disposal =
            out.environment_disposal +
            plan.s(o, i, j) * (fj * cfg.emissions_disposal(o, j) * cfg.co2_price[j]);
  return out;
}

template <class T>
CostTerms<T> upgrade_cost_terms(const ScenarioConfig& cfg,
                                const BasicPlan<T>& plan) {
  const int O = cfg.num_types_O, N = cfg.max_age_N, Th = cfg.horizon_T;
  const double f = cfg.discount_factor();
  CostTerms<T> out;
  if (plan.bk.empty()) return out;
  double fj = 1.0;
  for (int j = 0; j <= Th; ++j, fj *= f)
    for (int o = 0; o <= O; ++o) {
      out.upgrade_components =
          out.upgrade_components + plan.bk(o, j) * (fj * cfg.component_price(o, j));
      out.component_resale =
          out.component_resale + plan.sk(o, j) * (fj * cfg.component_resale(o, j));
      for (int i = 0; i <= N; ++i) {
        out.upgrade_labor =
            out.upgrade_labor + plan.m(o, i, j) * (fj * cfg.install_cost(o, j));
        out.upgrade_labor =
            out.upgrade_labor + plan.dm(o, i, j) * (fj * cfg.removal_cost(o, j));
      }
    }
  return out;
}

template <class T>
T total_cost_value(const ScenarioConfig& cfg, const BasicPlan<T>& plan) {
  T t = base_cost_terms(cfg, plan).total();
  if (cfg.model_kind == ModelKind::Extended)
    t = t + environment_cost_terms(cfg, plan).total() +
        upgrade_cost_terms(cfg, plan).total();
  return t;
}

namespace detail {

inline CostReport to_report(const CostTerms<double>& t) {
  CostReport r;
  r.purchase = t.purchase;
  r.fixed = t.fixed;
  r.om = t.om;
  r.salvage = t.salvage;
  r.environment_production = t.environment_production;
  r.environment_operation = t.environment_operation;
  r.environment_disposal = t.environment_disposal;
  r.upgrade_components = t.upgrade_components;
  r.upgrade_labor = t.upgrade_labor;
  r.component_resale = t.component_resale;
  r.total = r.signed_sum();
  return r;
}

}  // namespace detail

inline CostReport base_cost(const ScenarioConfig& cfg,
                            const DecisionPlan& plan) {
  return detail::to_report(base_cost_terms(cfg, plan));
}

inline CostReport environment_cost(const ScenarioConfig& cfg,
                                   const DecisionPlan& plan) {
  return detail::to_report(environment_cost_terms(cfg, plan));
}

inline CostReport upgrade_cost(const ScenarioConfig& cfg,
                               const DecisionPlan& plan) {
  return detail::to_report(upgrade_cost_terms(cfg, plan));
}

inline CostReport total_cost(const ScenarioConfig& cfg,
                             const DecisionPlan& plan) {
  CostTerms<double> t = base_cost_terms(cfg, plan);
  if (cfg.model_kind == ModelKind::Extended) {
    const CostTerms<double> e = environment_cost_terms(cfg, plan);
    const CostTerms<double> u = upgrade_cost_terms(cfg, plan);
    t.environment_production = e.environment_production;
    t.environment_operation = e.environment_operation;
    t.environment_disposal = e.environment_disposal;
    t.upgrade_components = u.upgrade_components;
    t.upgrade_labor = u.upgrade_labor;
    t.component_resale = u.component_resale;
  }
  return detail::to_report(t);
}

// Absolute percentage error against the proven optimum.
inline double discrepancy(double obj, double obj_optimal) {
  if (obj_optimal == 0.0)
    throw std::domain_error("discrepancy undefined for zero optimum");
  return std::abs(obj - obj_optimal) / std::abs(obj_optimal) * 100.0;
}

}  // namespace fleetopt

#endif  // FLEETOPT_OBJECTIVE_HPP
