#ifndef FLEETOPT_SCENARIOS_HPP
#define FLEETOPT_SCENARIOS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fleetopt/model.hpp"

namespace fleetopt {

// ---------------------------------------------------------------------------
// Case 1: vehicle fleet, eight scenarios varying price model, O&M model,
// utilization model and demand. Three-year horizon, ten-year maximum age,
// 5% discount rate, 3 vehicles at each of ages 1, 3, 5, 7, 9.
// ---------------------------------------------------------------------------

namespace case1_data {

inline constexpr int kAges = 11;  // ages 0..10

inline constexpr std::array<double, kAges> kPriceLinear = {
    1000000, 946315, 892630, 838945, 785260, 731575,
    677890,  624205, 570520, 516835, 463150};
inline constexpr std::array<double, kAges> kPriceEmpirical = {
    1000000, 910000, 830000, 820000, 630000, 620000,
    600000,  590000, 580000, 510000, 330000};
inline constexpr std::array<double, kAges> kOmPerKmConstant = {
    3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
inline constexpr std::array<double, kAges> kOmPerKmEmpirical = {
    3.44, 3.53, 4.75, 3.75, 4.81, 3.82, 3.73, 4.91, 3.83, 5.02, 4.05};
inline constexpr std::array<double, kAges> kUtilConstant = {
    20000, 20000, 20000, 20000, 20000, 20000, 20000, 20000, 20000, 20000, 0};
inline constexpr std::array<double, kAges> kUtilUserPreference = {
    20000, 20000, 20000, 20000, 18000, 16000, 14000, 12000, 10000, 8000, 0};

}  // namespace case1_data

// Built-in Case-1 scenario, id in 1..8. Scenario layout: price model
// alternates linear/empirical every four ids, O&M constant/empirical every
// two, utilization constant/user-preference every other id. Demand is
// 300,000 km with constant utilization, 228,000 km otherwise.
inline ScenarioConfig case1(int scenario_id) {
  if (scenario_id < 1 || scenario_id > 8)
    throw ScenarioError("case1 scenario id must be in 1..8, got " +
                        std::to_string(scenario_id));
  using namespace case1_data;
  const int idx = scenario_id - 1;
  const auto& price = (idx < 4) ? kPriceLinear : kPriceEmpirical;
  const auto& omkm = ((idx / 2) % 2 == 0) ? kOmPerKmConstant : kOmPerKmEmpirical;
  const auto& util = (idx % 2 == 0) ? kUtilConstant : kUtilUserPreference;
  const double demand = (idx % 2 == 0) ? 300000.0 : 228000.0;

  ScenarioConfig cfg;
  cfg.horizon_T = 3;
  cfg.max_age_N = 10;
  cfg.num_types_O = 0;
  cfg.discount_rate = 0.05;
  cfg.model_kind = ModelKind::Base;

  cfg.purchase_price = Grid3<double>(1, kAges, 1);
  cfg.salvage = Grid3<double>(1, kAges, 1);
  cfg.usage = Grid3<double>(1, kAges, 1);
  cfg.om_cost = Grid3<double>(1, kAges, 1);
  cfg.initial_fleet = Grid3<double>(1, kAges, 1);
  for (int i = 0; i < kAges; ++i) {
    cfg.purchase_price(0, i, 0) = price[i];
    cfg.salvage(0, i, 0) = price[i];  // resale value follows the price table
    cfg.usage(0, i, 0) = util[i];
    cfg.om_cost(0, i, 0) = omkm[i] * util[i];  // per period = THB/km * km
  }
  for (int age : {1, 3, 5, 7, 9}) cfg.initial_fleet(0, age, 0) = 3.0;
  cfg.demand = {demand, demand, demand, 0.0};
  cfg.fixed_cost = {0.0};
  return validate_scenario(cfg);
}

// ---------------------------------------------------------------------------
// Case 2: electric vehicle with exchangeable battery modules, extended
// formulation. o = 0 is the vehicle with the 75 kWh pack (range 375 km),
// o = 1 the 100 kWh variant (range 500 km); the battery is the exchangeable
// component of the matching type.
// ---------------------------------------------------------------------------

namespace case2_data {

inline constexpr double kBaseVehiclePrice = 60000.0;
inline constexpr std::array<double, 2> kBatteryPrice = {12000.0, 21000.0};
inline constexpr std::array<double, 2> kRangeKm = {375.0, 500.0};
inline constexpr double kSwapLabor = 30.0;
inline constexpr double kAnnualMaintenance = 576.0;
inline constexpr double kAnnualMileageKm = 11733.0;

inline constexpr std::array<double, 3> kCo2Price = {45.0, 55.0, 65.0};
inline constexpr std::array<double, 3> kElectricProductionTons = {12.6, 12.5,
                                                                  12.4};
inline constexpr std::array<double, 3> kElectricOperationGramsPerKm = {
    5.12, 5.05, 4.97};
// Diesel rows are part of the published emission data set but no diesel
// type exists in this fixture; kept for reference.
inline constexpr std::array<double, 3> kDieselProductionTons = {8.1, 8.1, 8.1};
inline constexpr std::array<double, 3> kDieselOperationGramsPerKm = {
    134.68, 136.36, 138.04};

// Remaining value fraction by age: -25% in the first year, 50% left after
// three years (linear in between), then -5% per year.
inline double value_fraction(int age) {
  static const std::array<double, 4> head = {1.0, 0.75, 0.625, 0.5};
  if (age < 4) return head[age];
  return 0.5 * std::pow(0.95, age - 3);
}

}  // namespace case2_data

inline ScenarioConfig case2() {
  using namespace case2_data;
  ScenarioConfig cfg;
  cfg.horizon_T = 3;
  cfg.max_age_N = 10;
  cfg.num_types_O = 1;
  cfg.discount_rate = 0.05;
  cfg.model_kind = ModelKind::Extended;

  const int ni = cfg.ages(), nj = cfg.periods();
  cfg.purchase_price = Grid3<double>(2, ni, 1);
  cfg.salvage = Grid3<double>(2, ni, 1);
  cfg.usage = Grid3<double>(2, ni, 1);
  cfg.om_cost = Grid3<double>(2, ni, 1);
  cfg.initial_fleet = Grid3<double>(2, ni, 1);
  for (int o = 0; o < 2; ++o) {
    const double new_price = kBaseVehiclePrice + kBatteryPrice[o];
    for (int i = 0; i < ni; ++i) {
      cfg.purchase_price(o, i, 0) = new_price * value_fraction(i);
      cfg.salvage(o, i, 0) = new_price * value_fraction(i);
      cfg.usage(o, i, 0) = (i < cfg.max_age_N) ? kRangeKm[o] : 0.0;
      cfg.om_cost(o, i, 0) = kAnnualMaintenance;
    }
  }
  cfg.demand = {5000.0, 5200.0, 5400.0, 0.0};
  cfg.fixed_cost = {0.0};

  // Emission per deployment-period: annual mileage times g/km, in tons.
  cfg.emissions_production = Grid2<double>(2, nj);
  cfg.emissions_operation = Grid2<double>(2, nj);
  cfg.emissions_disposal = Grid2<double>(2, nj);  // neglected
  cfg.co2_price.assign(nj, 0.0);
  for (int j = 0; j < nj; ++j) {
    const int y = std::min<int>(j, 2);
    cfg.co2_price[j] = kCo2Price[y];
    for (int o = 0; o < 2; ++o) {
      cfg.emissions_production(o, j) = kElectricProductionTons[y];
      cfg.emissions_operation(o, j) =
          kAnnualMileageKm * kElectricOperationGramsPerKm[y] * 1e-6;
    }
  }

  cfg.component_stock = {0.0, 0.0};
  cfg.component_price = Grid2<double>(2, 1);
  cfg.component_resale = Grid2<double>(2, 1);
  cfg.install_cost = Grid2<double>(2, 1);
  cfg.removal_cost = Grid2<double>(2, 1);
  for (int o = 0; o < 2; ++o) {
    cfg.component_price(o, 0) = kBatteryPrice[o];
    cfg.component_resale(o, 0) = 0.5 * kBatteryPrice[o];
    cfg.install_cost(o, 0) = kSwapLabor;
    cfg.removal_cost(o, 0) = kSwapLabor;
  }
  return validate_scenario(cfg);
}

// ---------------------------------------------------------------------------
// Horizon scaling: repeat every table's final deployment-period values out
// to new_T and drop discounting, as the scaling study prescribes.
// ---------------------------------------------------------------------------

inline ScenarioConfig scale_horizon(const ScenarioConfig& input, int new_T) {
  const ScenarioConfig cfg = validate_scenario(input);
  if (new_T < cfg.horizon_T)
    throw ScenarioError("scale_horizon: new_T " + std::to_string(new_T) +
                        " < horizon_T " + std::to_string(cfg.horizon_T));
  ScenarioConfig out = cfg;
  out.horizon_T = new_T;
  out.discount_rate = 0.0;
  const int oldT = cfg.horizon_T;
  const std::size_t no = cfg.types(), ni = cfg.ages();
  const std::size_t nj = static_cast<std::size_t>(new_T) + 1;

  auto ext3 = [&](const Grid3<double>& g) {
    Grid3<double> r(no, ni, nj);
    for (std::size_t o = 0; o < no; ++o)
      for (std::size_t i = 0; i < ni; ++i)
        for (std::size_t j = 0; j < nj; ++j)
          r(o, i, j) = g(o, i, std::min<std::size_t>(j, oldT));
    return r;
  };
  auto ext2 = [&](const Grid2<double>& g) {
    Grid2<double> r(no, nj);
    for (std::size_t o = 0; o < no; ++o)
      for (std::size_t j = 0; j < nj; ++j)
        r(o, j) = g(o, std::min<std::size_t>(j, oldT));
    return r;
  };
  // Demand and fixed cost act in periods j < T; repeat the last acting value.
  auto ext_acting = [&](const std::vector<double>& v) {
    std::vector<double> r(nj);
    for (std::size_t j = 0; j + 1 < nj; ++j)
      r[j] = v[std::min<std::size_t>(j, oldT - 1)];
    r[nj - 1] = v[oldT];
    return r;
  };

  out.purchase_price = ext3(cfg.purchase_price);
  out.om_cost = ext3(cfg.om_cost);
  out.salvage = ext3(cfg.salvage);
  out.usage = ext3(cfg.usage);
  out.initial_fleet = ext3(cfg.initial_fleet);
  out.demand = ext_acting(cfg.demand);
  out.fixed_cost = ext_acting(cfg.fixed_cost);
  out.co2_price.assign(nj, 0.0);
  for (std::size_t j = 0; j < nj; ++j)
    out.co2_price[j] = cfg.co2_price[std::min<std::size_t>(j, oldT)];
  out.emissions_production = ext2(cfg.emissions_production);
  out.emissions_operation = ext2(cfg.emissions_operation);
  out.emissions_disposal = ext2(cfg.emissions_disposal);
  out.component_price = ext2(cfg.component_price);
  out.component_resale = ext2(cfg.component_resale);
  out.install_cost = ext2(cfg.install_cost);
  out.removal_cost = ext2(cfg.removal_cost);
  return validate_scenario(out);
}

// ---------------------------------------------------------------------------
// Scenario file format. Plain text, one `key = values` entry per line,
// '#' starts a comment. Grid tables take [o] / [o][i] subscripts; reduced
// forms (constant or age-only) are allowed and broadcast on validation.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr const char* kScenarioMagic = "fleetopt-scenario";
inline constexpr int kScenarioSchemaVersion = 1;

struct ParseError : ScenarioError {
  using ScenarioError::ScenarioError;
};

inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

inline void save(const ScenarioConfig& input, const std::string& path) {
  const ScenarioConfig cfg = validate_scenario(input);
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot open " + path + " for writing");
  using detail::fmt_double;
  out << detail::kScenarioMagic << " " << detail::kScenarioSchemaVersion
      << "\n";
  out << "model_kind = "
      << (cfg.model_kind == ModelKind::Base ? "base" : "extended") << "\n";
  out << "horizon_T = " << cfg.horizon_T << "\n";
  out << "max_age_N = " << cfg.max_age_N << "\n";
  out << "num_types_O = " << cfg.num_types_O << "\n";
  out << "discount_rate = " << fmt_double(cfg.discount_rate) << "\n";

  auto put_vec = [&](const char* name, const std::vector<double>& v) {
    out << name << " =";
    for (double x : v) out << " " << fmt_double(x);
    out << "\n";
  };
  put_vec("demand", cfg.demand);
  put_vec("fixed_cost", cfg.fixed_cost);

  auto put3 = [&](const char* name, const Grid3<double>& g) {
    for (std::size_t o = 0; o < g.num_types(); ++o)
      for (std::size_t i = 0; i < g.num_ages(); ++i) {
        out << name << "[" << o << "][" << i << "] =";
        for (std::size_t j = 0; j < g.num_periods(); ++j)
          out << " " << fmt_double(g(o, i, j));
        out << "\n";
      }
  };
  put3("purchase_price", cfg.purchase_price);
  put3("om_cost", cfg.om_cost);
  put3("salvage", cfg.salvage);
  put3("usage", cfg.usage);
  put3("initial_fleet", cfg.initial_fleet);

  if (cfg.model_kind == ModelKind::Extended) {
    put_vec("co2_price", cfg.co2_price);
    put_vec("component_stock", cfg.component_stock);
    auto put2 = [&](const char* name, const Grid2<double>& g) {
      for (std::size_t o = 0; o < g.num_types(); ++o) {
        out << name << "[" << o << "] =";
        for (std::size_t j = 0; j < g.num_periods(); ++j)
          out << " " << fmt_double(g(o, j));
        out << "\n";
      }
    };
    put2("emissions_production", cfg.emissions_production);
    put2("emissions_operation", cfg.emissions_operation);
    put2("emissions_disposal", cfg.emissions_disposal);
    put2("component_price", cfg.component_price);
    put2("component_resale", cfg.component_resale);
    put2("install_cost", cfg.install_cost);
    put2("removal_cost", cfg.removal_cost);
  }
  if (!out) throw ScenarioError("write failed: " + path);
}

inline ScenarioConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path);
  using detail::ParseError;

  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!std::getline(in, line)) fail("empty file");
  lineno = 1;
  {
    std::istringstream hs(line);
    std::string magic;
    int version = -1;
    hs >> magic >> version;
    if (magic != detail::kScenarioMagic)
      fail("not a scenario file (missing '" +
           std::string(detail::kScenarioMagic) + "' header)");
    if (version != detail::kScenarioSchemaVersion)
      fail("unsupported schema version " + std::to_string(version));
  }

  ScenarioConfig cfg;
  cfg.horizon_T = cfg.max_age_N = -1;
  bool have_kind = false, have_demand = false;

  // Table cells gathered as (o, i, row-of-values); assembled afterwards.
  struct Row {
    int o = -1, i = -1;
    std::vector<double> vals;
    int lineno;
  };
  std::map<std::string, std::vector<Row>> grid3_rows, grid2_rows;
  const std::vector<std::string> grid3_keys = {
      "purchase_price", "om_cost", "salvage", "usage", "initial_fleet"};
  const std::vector<std::string> grid2_keys = {
      "emissions_production", "emissions_operation", "emissions_disposal",
      "component_price",      "component_resale",    "install_cost",
      "removal_cost"};

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

    // Split off subscripts.
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

    std::vector<double> vals;
    {
      std::istringstream vs(rest);
      std::string tok;
      while (vs >> tok) {
        if (base == "model_kind") {
          if (tok == "base")
            cfg.model_kind = ModelKind::Base;
          else if (tok == "extended")
            cfg.model_kind = ModelKind::Extended;
          else
            fail("model_kind must be 'base' or 'extended'");
          have_kind = true;
          vals.push_back(0);
          continue;
        }
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

    auto scalar = [&]() -> double {
      if (vals.size() != 1) fail("key '" + base + "' takes one value");
      return vals[0];
    };
    if (base == "model_kind") {
      // handled above
    } else if (base == "horizon_T") {
      cfg.horizon_T = static_cast<int>(scalar());
    } else if (base == "max_age_N") {
      cfg.max_age_N = static_cast<int>(scalar());
    } else if (base == "num_types_O") {
      cfg.num_types_O = static_cast<int>(scalar());
    } else if (base == "discount_rate") {
      cfg.discount_rate = scalar();
    } else if (base == "demand") {
      cfg.demand = vals;
      have_demand = true;
    } else if (base == "fixed_cost") {
      cfg.fixed_cost = vals;
    } else if (base == "co2_price") {
      cfg.co2_price = vals;
    } else if (base == "component_stock") {
      cfg.component_stock = vals;
    } else if (std::find(grid3_keys.begin(), grid3_keys.end(), base) !=
               grid3_keys.end()) {
      Row r;
      r.lineno = lineno;
      if (subs.size() > 2) fail("too many subscripts for '" + base + "'");
      if (subs.size() >= 1) r.o = subs[0];
      if (subs.size() == 2) r.i = subs[1];
      r.vals = vals;
      grid3_rows[base].push_back(std::move(r));
    } else if (std::find(grid2_keys.begin(), grid2_keys.end(), base) !=
               grid2_keys.end()) {
      Row r;
      r.lineno = lineno;
      if (subs.size() > 1) fail("too many subscripts for '" + base + "'");
      if (subs.size() == 1) r.o = subs[0];
      r.vals = vals;
      grid2_rows[base].push_back(std::move(r));
    } else {
      fail("unknown key '" + base + "'");
    }
  }

  if (!have_kind) throw ParseError(path + ": missing model_kind");
  if (cfg.horizon_T < 0) throw ParseError(path + ": missing horizon_T");
  if (cfg.max_age_N < 0) throw ParseError(path + ": missing max_age_N");
  if (!have_demand) throw ParseError(path + ": missing demand");

  // Assemble grids. Unsubscripted single row = constant or age-only
  // (deduced from length); [o] rows = age-only per type; [o][i] rows = full.
  auto assemble3 = [&](const std::string& name) -> Grid3<double> {
    auto it = grid3_rows.find(name);
    if (it == grid3_rows.end()) return {};
    const auto& rows = it->second;
    const int ni = cfg.max_age_N + 1;
    if (rows.size() == 1 && rows[0].o < 0) {
      const auto& v = rows[0].vals;
      if (v.size() == 1) {
        Grid3<double> g(1, 1, 1);
        g(0, 0, 0) = v[0];
        return g;
      }
      Grid3<double> g(1, v.size(), 1);
      for (std::size_t i = 0; i < v.size(); ++i) g(0, i, 0) = v[i];
      return g;
    }
    const int no = cfg.num_types_O + 1;
    const bool full = rows[0].i >= 0;
    Grid3<double> g(no, ni, full ? cfg.horizon_T + 1 : 1);
    std::vector<bool> seen(g.size(), false);
    for (const auto& r : rows) {
      lineno = r.lineno;
      if (r.o < 0 || r.o >= no) fail("type subscript out of range in " + name);
      if (full) {
        if (r.i < 0 || r.i >= ni) fail("age subscript out of range in " + name);
        if (r.vals.size() != static_cast<std::size_t>(cfg.horizon_T + 1))
          fail(name + " row needs " + std::to_string(cfg.horizon_T + 1) +
               " period values");
        for (int j = 0; j <= cfg.horizon_T; ++j) g(r.o, r.i, j) = r.vals[j];
      } else {
        if (r.i >= 0) fail("mixed subscript forms in " + name);
        if (r.vals.size() != static_cast<std::size_t>(ni))
          fail(name + " row needs " + std::to_string(ni) + " age values");
        for (int i = 0; i < ni; ++i) g(r.o, i, 0) = r.vals[i];
      }
    }
    return g;
  };
  auto assemble2 = [&](const std::string& name) -> Grid2<double> {
    auto it = grid2_rows.find(name);
    if (it == grid2_rows.end()) return {};
    const auto& rows = it->second;
    if (rows.size() == 1 && rows[0].o < 0) {
      Grid2<double> g(1, rows[0].vals.size());
      for (std::size_t j = 0; j < rows[0].vals.size(); ++j)
        g(0, j) = rows[0].vals[j];
      return g;
    }
    const int no = cfg.num_types_O + 1;
    Grid2<double> g(no, cfg.horizon_T + 1);
    for (const auto& r : rows) {
      lineno = r.lineno;
      if (r.o < 0 || r.o >= no) fail("type subscript out of range in " + name);
      if (r.vals.size() != static_cast<std::size_t>(cfg.horizon_T + 1))
        fail(name + " row needs " + std::to_string(cfg.horizon_T + 1) +
             " period values");
      for (int j = 0; j <= cfg.horizon_T; ++j) g(r.o, j) = r.vals[j];
    }
    return g;
  };

  cfg.purchase_price = assemble3("purchase_price");
  cfg.om_cost = assemble3("om_cost");
  cfg.salvage = assemble3("salvage");
  cfg.usage = assemble3("usage");
  cfg.initial_fleet = assemble3("initial_fleet");
  cfg.emissions_production = assemble2("emissions_production");
  cfg.emissions_operation = assemble2("emissions_operation");
  cfg.emissions_disposal = assemble2("emissions_disposal");
  cfg.component_price = assemble2("component_price");
  cfg.component_resale = assemble2("component_resale");
  cfg.install_cost = assemble2("install_cost");
  cfg.removal_cost = assemble2("removal_cost");

  return validate_scenario(cfg);
}

}  // namespace fleetopt

#endif  // FLEETOPT_SCENARIOS_HPP
