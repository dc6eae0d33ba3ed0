#ifndef FLEETOPT_REPORT_HPP
#define FLEETOPT_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fleetopt/model.hpp"
#include "fleetopt/objective.hpp"

namespace fleetopt {

using ordered_json = nlohmann::ordered_json;

namespace report_detail {

inline ordered_json grid_json(const Grid3<double>& g) {
  ordered_json out = ordered_json::array();
  for (std::size_t o = 0; o < g.num_types(); ++o) {
    ordered_json to = ordered_json::array();
    for (std::size_t i = 0; i < g.num_ages(); ++i) {
      ordered_json ti = ordered_json::array();
      for (std::size_t j = 0; j < g.num_periods(); ++j) ti.push_back(g(o, i, j));
      to.push_back(std::move(ti));
    }
    out.push_back(std::move(to));
  }
  return out;
}

inline ordered_json grid_json(const Grid2<double>& g) {
  ordered_json out = ordered_json::array();
  for (std::size_t o = 0; o < g.num_types(); ++o) {
    ordered_json to = ordered_json::array();
    for (std::size_t j = 0; j < g.num_periods(); ++j) to.push_back(g(o, j));
    out.push_back(std::move(to));
  }
  return out;
}

// Timing-dependent telemetry keys are excluded unless asked for, so that
// repeated runs produce byte-identical reports.
inline bool timing_key(const std::string& k) {
  return k.find("time") != std::string::npos ||
         k.find("_sec") != std::string::npos;
}

}  // namespace report_detail

inline ordered_json cost_json(const CostReport& c) {
  ordered_json out;
  out["purchase"] = c.purchase;
  out["fixed"] = c.fixed;
  out["om"] = c.om;
  out["salvage"] = c.salvage;
  out["environment_production"] = c.environment_production;
  out["environment_operation"] = c.environment_operation;
  out["environment_disposal"] = c.environment_disposal;
  out["upgrade_components"] = c.upgrade_components;
  out["upgrade_labor"] = c.upgrade_labor;
  out["component_resale"] = c.component_resale;
  out["total"] = c.total;
  return out;
}

inline ordered_json plan_json(const ScenarioConfig& cfg,
                              const DecisionPlan& plan) {
  ordered_json out;
  out["deployed"] = report_detail::grid_json(plan.v);
  out["purchased"] = report_detail::grid_json(plan.b);
  out["sold"] = report_detail::grid_json(plan.s);
  out["purchase_indicator"] = plan.delta;
  if (cfg.model_kind == ModelKind::Extended) {
    out["components_installed"] = report_detail::grid_json(plan.m);
    out["components_removed"] = report_detail::grid_json(plan.dm);
    out["components_purchased"] = report_detail::grid_json(plan.bk);
    out["components_sold"] = report_detail::grid_json(plan.sk);
    out["component_inventory"] = report_detail::grid_json(plan.inv);
  }
  return out;
}

inline ordered_json solve_report(const ScenarioConfig& cfg,
                                 const std::string& solver,
                                 const SolveResult& res,
                                 bool include_timing = false) {
  ordered_json out;
  out["solver"] = solver;
  out["model"] = cfg.model_kind == ModelKind::Base ? "base" : "extended";
  out["status"] = to_string(res.status);
  out["objective"] = res.objective;
  if (res.status == SolveStatus::Optimal ||
      res.status == SolveStatus::Feasible) {
    out["costs"] = cost_json(total_cost(cfg, res.plan));
    out["plan"] = plan_json(cfg, res.plan);
  }
  ordered_json viol = ordered_json::array();
  for (const ViolationRecord& v : res.audit) viol.push_back(v.to_string());
  out["violations"] = std::move(viol);
  ordered_json tele;
  for (const auto& [k, val] : res.telemetry)
    if (include_timing || !report_detail::timing_key(k)) tele[k] = val;
  out["telemetry"] = std::move(tele);
  return out;
}

inline ordered_json compare_report(const ScenarioConfig& cfg,
                                   const SolveResult& exact,
                                   const SolveResult& ml,
                                   bool include_timing = false) {
  ordered_json out;
  out["exact"] = solve_report(cfg, "exact", exact, include_timing);
  out["ml"] = solve_report(cfg, "ml", ml, include_timing);
  out["discrepancy_percent"] = discrepancy(ml.objective, exact.objective);
  return out;
}

inline std::string to_text(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace fleetopt

#endif  // FLEETOPT_REPORT_HPP
