#ifndef FLEETOPT_PLAN_IO_HPP
#define FLEETOPT_PLAN_IO_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fleetopt/model.hpp"

namespace fleetopt {

// ---------------------------------------------------------------------------
// Decision-plan file format, in the same `key = values` style as scenario
// files. Every tensor is written as plain integers with ages as rows and
// periods as columns:
//
//   fleetopt-plan 1
//   model_kind = base
//   horizon_T = 3
//   max_age_N = 10
//   num_types_O = 0
//   deployed[0][0] = 12 12 12 0
//   ...
//   purchase_indicator = 1 0 0 0
//
// Extended plans add components_installed / components_removed ([o][i] rows)
// and components_purchased / components_sold / component_inventory ([o] rows).
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr const char* kPlanMagic = "fleetopt-plan";
inline constexpr int kPlanSchemaVersion = 1;

}  // namespace detail

inline void save_plan(const ScenarioConfig& cfg, const DecisionPlan& plan,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot open " + path + " for writing");
  out << detail::kPlanMagic << " " << detail::kPlanSchemaVersion << "\n";
  out << "model_kind = "
      << (cfg.model_kind == ModelKind::Base ? "base" : "extended") << "\n";
  out << "horizon_T = " << cfg.horizon_T << "\n";
  out << "max_age_N = " << cfg.max_age_N << "\n";
  out << "num_types_O = " << cfg.num_types_O << "\n";

  auto put3 = [&](const char* name, const Grid3<double>& g) {
    for (std::size_t o = 0; o < g.num_types(); ++o)
      for (std::size_t i = 0; i < g.num_ages(); ++i) {
        out << name << "[" << o << "][" << i << "] =";
        for (std::size_t j = 0; j < g.num_periods(); ++j)
          out << " " << std::llround(g(o, i, j));
        out << "\n";
      }
  };
  auto put2 = [&](const char* name, const Grid2<double>& g) {
    for (std::size_t o = 0; o < g.num_types(); ++o) {
      out << name << "[" << o << "] =";
      for (std::size_t j = 0; j < g.num_periods(); ++j)
        out << " " << std::llround(g(o, j));
      out << "\n";
    }
  };
  put3("deployed", plan.v);
  put3("purchased", plan.b);
  put3("sold", plan.s);
  out << "purchase_indicator =";
  for (double d : plan.delta) out << " " << std::llround(d);
  out << "\n";
  if (cfg.model_kind == ModelKind::Extended) {
    put3("components_installed", plan.m);
    put3("components_removed", plan.dm);
    put2("components_purchased", plan.bk);
    put2("components_sold", plan.sk);
    put2("component_inventory", plan.inv);
  }
  if (!out) throw ScenarioError("write failed: " + path);
}

// Reads a plan file and checks its shape against the scenario it is meant
// to be validated with.
inline DecisionPlan load_plan(const ScenarioConfig& cfg,
                              const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ScenarioError(path + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(in, line)) fail("empty file");
  lineno = 1;
  {
    std::istringstream hs(line);
    std::string magic;
    int version = -1;
    hs >> magic >> version;
    if (magic != detail::kPlanMagic)
      fail("not a plan file (missing '" + std::string(detail::kPlanMagic) +
           "' header)");
    if (version != detail::kPlanSchemaVersion)
      fail("unsupported schema version " + std::to_string(version));
  }

  DecisionPlan plan = DecisionPlan::zeros(cfg);
  const int no = cfg.types(), ni = cfg.ages(), nj = cfg.periods();

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) fail("expected 'key = values'");
    std::string key = trimmed.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string rest = trimmed.substr(eq + 1);

    std::string base = key;
    std::vector<int> subs;
    auto bracket = key.find('[');
    if (bracket != std::string::npos) {
      base = key.substr(0, bracket);
      std::string tail = key.substr(bracket);
      while (!tail.empty()) {
        if (tail.front() != '[') fail("malformed subscript in '" + key + "'");
        auto close = tail.find(']');
        if (close == std::string::npos)
          fail("malformed subscript in '" + key + "'");
        try {
          subs.push_back(std::stoi(tail.substr(1, close - 1)));
        } catch (const std::exception&) {
          fail("malformed subscript in '" + key + "'");
        }
        tail.erase(0, close + 1);
      }
    }

    if (base == "model_kind") {
      std::istringstream vs(rest);
      std::string tok;
      vs >> tok;
      const bool ext = tok == "extended";
      if (!ext && tok != "base") fail("model_kind must be 'base' or 'extended'");
      if ((cfg.model_kind == ModelKind::Extended) != ext)
        fail("plan model_kind does not match the scenario");
      continue;
    }

    std::vector<double> vals;
    {
      std::istringstream vs(rest);
      std::string tok;
      while (vs >> tok) {
        try {
          std::size_t used = 0;
          vals.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail("bad number '" + tok + "' for key '" + key + "'");
        }
      }
    }
    if (vals.empty()) fail("no values for key '" + key + "'");

    auto scalar_is = [&](int want) {
      if (vals.size() != 1 || static_cast<int>(vals[0]) != want)
        fail("'" + base + "' does not match the scenario");
    };
    auto fill3 = [&](Grid3<double>& g) {
      if (subs.size() != 2) fail("'" + base + "' needs [o][i] subscripts");
      const int o = subs[0], i = subs[1];
      if (o < 0 || o >= no) fail("type subscript out of range in " + base);
      if (i < 0 || i >= ni) fail("age subscript out of range in " + base);
      if (vals.size() != static_cast<std::size_t>(nj))
        fail(base + " row needs " + std::to_string(nj) + " period values");
      for (int j = 0; j < nj; ++j) g(o, i, j) = vals[j];
    };
    auto fill2 = [&](Grid2<double>& g) {
      if (subs.size() != 1) fail("'" + base + "' needs an [o] subscript");
      const int o = subs[0];
      if (o < 0 || o >= no) fail("type subscript out of range in " + base);
      if (vals.size() != static_cast<std::size_t>(nj))
        fail(base + " row needs " + std::to_string(nj) + " period values");
      if (g.empty()) g = Grid2<double>(no, nj, 0.0);
      for (int j = 0; j < nj; ++j) g(o, j) = vals[j];
    };

    if (base == "horizon_T") {
      scalar_is(cfg.horizon_T);
    } else if (base == "max_age_N") {
      scalar_is(cfg.max_age_N);
    } else if (base == "num_types_O") {
      scalar_is(cfg.num_types_O);
    } else if (base == "deployed") {
      fill3(plan.v);
    } else if (base == "purchased") {
      fill3(plan.b);
    } else if (base == "sold") {
      fill3(plan.s);
    } else if (base == "purchase_indicator") {
      if (vals.size() != static_cast<std::size_t>(nj))
        fail("purchase_indicator needs " + std::to_string(nj) + " values");
      plan.delta = vals;
    } else if (base == "components_installed") {
      fill3(plan.m);
    } else if (base == "components_removed") {
      fill3(plan.dm);
    } else if (base == "components_purchased") {
      fill2(plan.bk);
    } else if (base == "components_sold") {
      fill2(plan.sk);
    } else if (base == "component_inventory") {
      fill2(plan.inv);
    } else {
      fail("unknown key '" + base + "'");
    }
  }
  return plan;
}

}  // namespace fleetopt

#endif  // FLEETOPT_PLAN_IO_HPP
