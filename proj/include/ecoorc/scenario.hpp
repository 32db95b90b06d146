// Copyright 2026 The ecoorc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ECOORC_SCENARIO_HPP_
#define ECOORC_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ecoorc/csv.hpp"
#include "ecoorc/footprint.hpp"
#include "ecoorc/gridmix.hpp"
#include "ecoorc/simulator.hpp"
#include "ecoorc/wue.hpp"
#include "json.hpp"

namespace ecoorc {

/// A fully resolved experiment description: the fleet, a region provider,
/// the user population and both config blocks.
struct Scenario {
  std::string name;
  std::vector<DataCenterProfile> fleet;  // region.region_id links the provider
  std::shared_ptr<const RegionProvider> regions;
  SimulationConfig simulation;  // carries the users
  SchedulerConfig scheduler;
  std::string output_dir = "out";
  std::vector<std::string> warnings;  // e.g. facilities missing land data
};

namespace detail {

inline std::optional<double> opt_field(const std::string& s, const std::string& where) {
  if (s.empty()) return std::nullopt;
  return csv::parse_double(s, where);
}

}  // namespace detail

/// Fleet fixture loader. Empty land cells are tolerated (the facility
/// participates with a zero on-site land term) unless strict is set.
inline std::vector<DataCenterProfile> load_fleet_csv(const std::string& path,
                                                     bool strict,
                                                     std::vector<std::string>* warnings,
                                                     std::vector<std::string>* errors) {
  auto t = csv::read_table(path);
  int c_id = t.column("dc_id");
  int c_region = t.column("region_id");
  int c_pue = t.column("pue");
  int c_wue = t.column("wue_l_per_kwh");
  int c_pon = t.column("p_onsite");
  int c_cion = t.column("ci_onsite_g_per_kwh");
  int c_ewon = t.column("ewif_onsite_l_per_kwh");
  int c_area = t.column("area_m2");
  int c_it = t.column("annual_it_energy_kwh");
  int c_ewi = t.column("ewi_g_per_kwh");
  int c_smax = t.column("s_max");
  std::vector<DataCenterProfile> fleet;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::string where = path + " row " + std::to_string(i + 2);
    try {
      DataCenterProfile dc;
      dc.dc_id = row[c_id];
      dc.region.region_id = row[c_region];
      dc.pue = csv::parse_double(row[c_pue], where + " pue");
      dc.wue = csv::parse_double(row[c_wue], where + " wue");
      dc.p_onsite = csv::parse_double(row[c_pon], where + " p_onsite");
      dc.ci_onsite = csv::parse_double(row[c_cion], where + " ci_onsite");
      dc.ewif_onsite = csv::parse_double(row[c_ewon], where + " ewif_onsite");
      dc.area = detail::opt_field(row[c_area], where + " area_m2");
      dc.annual_it_energy = detail::opt_field(row[c_it], where + " annual_it_energy_kwh");
      dc.ewi = csv::parse_double(row[c_ewi], where + " ewi");
      dc.s_max = static_cast<int>(csv::parse_long(row[c_smax], where + " s_max"));
      dc.validate();
      if (!dc.has_land_data()) {
        std::string note = "dc '" + dc.dc_id + "': no land data, on-site land impact counts as 0";
        if (strict) {
          if (errors) errors->push_back(note + " (strict mode rejects this)");
        } else if (warnings) {
          warnings->push_back(note);
        }
      }
      fleet.push_back(std::move(dc));
    } catch (const Error& e) {
      if (errors) {
        errors->push_back(e.what());
      } else {
        throw;
      }
    }
  }
  return fleet;
}

inline std::map<std::string, RegionProfile> load_regions_csv(const std::string& path) {
  auto t = csv::read_table(path);
  int c_id = t.column("region_id");
  int c_ci = t.column("ci_g_per_kwh");
  int c_ew = t.column("ewif_l_per_kwh");
  int c_el = t.column("elif_m2_per_kwh");
  int c_wsf = t.column("wsf");
  int c_cclf = t.column("cclf_g_per_m2_yr");
  std::map<std::string, RegionProfile> regions;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::string where = path + " row " + std::to_string(i + 2);
    RegionProfile r;
    r.region_id = row[c_id];
    r.ci_grid = csv::parse_double(row[c_ci], where);
    r.ewif_grid = csv::parse_double(row[c_ew], where);
    r.elif_grid = csv::parse_double(row[c_el], where);
    r.wsf = csv::parse_double(row[c_wsf], where);
    r.cclf = csv::parse_double(row[c_cclf], where);
    r.validate();
    if (!regions.emplace(r.region_id, r).second) {
      throw Error(where + ": duplicate region_id '" + r.region_id + "'");
    }
  }
  return regions;
}

inline std::map<std::string, MixRegionProvider::RegionalParams> load_regional_params_csv(
    const std::string& path) {
  auto t = csv::read_table(path);
  int c_id = t.column("region_id");
  int c_wsf = t.column("wsf");
  int c_cclf = t.column("cclf_g_per_m2_yr");
  std::map<std::string, MixRegionProvider::RegionalParams> params;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::string where = path + " row " + std::to_string(i + 2);
    MixRegionProvider::RegionalParams p;
    p.wsf = csv::parse_double(row[c_wsf], where);
    p.cclf = csv::parse_double(row[c_cclf], where);
    if (!params.emplace(row[c_id], p).second) {
      throw Error(where + ": duplicate region_id '" + row[c_id] + "'");
    }
  }
  return params;
}

/// Weather fixture: timestamp_utc,temp_c,dewpoint_c per hour.
inline std::vector<WeatherSample> load_weather_csv(const std::string& path) {
  auto t = csv::read_table(path);
  int c_ts = t.column("timestamp_utc");
  int c_t = t.column("temp_c");
  int c_d = t.column("dewpoint_c");
  std::vector<WeatherSample> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::string where = path + " row " + std::to_string(i + 2);
    WeatherSample s;
    s.timestamp = timeutil::parse_rfc3339(row[c_ts]);
    s.temp_c = csv::parse_double(row[c_t], where + " temp_c");
    s.dewpoint_c = csv::parse_double(row[c_d], where + " dewpoint_c");
    if (s.dewpoint_c > s.temp_c) {
      throw Error(where + ": dewpoint_c above temp_c");
    }
    out.push_back(s);
  }
  return out;
}

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& field,
                          std::vector<std::string>& errors, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j[field].is_number()) {
    errors.push_back("field '" + field + "' must be a number");
    return fallback;
  }
  return j[field].get<double>();
}

}  // namespace detail

/// Loads and validates a scenario file (JSON, with CSV fixtures referenced
/// relative to it). Validation enumerates every violation it can find
/// before failing, rather than stopping at the first.
inline Scenario load_scenario(const std::string& path) {
  namespace fs = std::filesystem;
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("scenario '" + path + "': " + e.what());
  }
  fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& rel) { return (base / rel).string(); };

  std::vector<std::string> errors;
  Scenario sc;
  sc.name = j.value("name", fs::path(path).stem().string());
  sc.output_dir = j.value("output_dir", std::string("out"));

  if (j.contains("start_utc")) {
    try {
      sc.simulation.start_utc = timeutil::parse_rfc3339(j["start_utc"].get<std::string>());
    } catch (const std::exception& e) {
      errors.push_back(std::string("field 'start_utc': ") + e.what());
    }
  }

  bool strict = j.value("missing_data", std::string("warn")) == "strict";

  // Fleet.
  if (!j.contains("fleet") || !j["fleet"].is_string()) {
    errors.push_back("field 'fleet' must name a fleet CSV");
  } else {
    try {
      sc.fleet = load_fleet_csv(resolve(j["fleet"].get<std::string>()), strict,
                                &sc.warnings, &errors);
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  std::set<std::string> dc_ids;
  for (const auto& dc : sc.fleet) {
    if (!dc_ids.insert(dc.dc_id).second) {
      errors.push_back("duplicate dc_id '" + dc.dc_id + "'");
    }
  }

  // Regions: either direct profiles or a mix derivation block.
  std::set<std::string> known_regions;
  std::shared_ptr<const RegionProvider> provider;
  if (!j.contains("regions") || !j["regions"].is_object()) {
    errors.push_back("field 'regions' must be an object with 'static' or 'mix'");
  } else if (j["regions"].contains("static")) {
    try {
      auto regions = load_regions_csv(resolve(j["regions"]["static"].get<std::string>()));
      for (const auto& [id, r] : regions) known_regions.insert(id);
      provider = std::make_shared<StaticRegionProvider>(std::move(regions));
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  } else if (j["regions"].contains("mix")) {
    try {
      const auto& m = j["regions"]["mix"];
      auto factors = load_source_factors(resolve(m.at("factors").get<std::string>()));
      auto params = load_regional_params_csv(resolve(m.at("regional").get<std::string>()));
      auto mode = m.value("mode", std::string("static")) == "hourly"
                      ? FixtureMixBackend::Mode::kHourly
                      : FixtureMixBackend::Mode::kRepeatFirst;
      auto backend = std::make_shared<FixtureMixBackend>(
          resolve(m.at("mixes").get<std::string>()), mode);
      for (const auto& [id, p] : params) known_regions.insert(id);
      provider = std::make_shared<MixRegionProvider>(backend, std::move(factors),
                                                     std::move(params));
    } catch (const std::exception& e) {
      errors.push_back(std::string("regions.mix: ") + e.what());
    }
  } else {
    errors.push_back("field 'regions' needs either 'static' or 'mix'");
  }
  sc.regions = provider;

  // Users.
  if (!j.contains("users") || !j["users"].is_array() || j["users"].empty()) {
    errors.push_back("field 'users' must be a non-empty array");
  } else {
    std::set<std::string> seen;
    for (const auto& u : j["users"]) {
      User user;
      user.user_id = u.value("user_id", std::string());
      if (user.user_id.empty()) {
        errors.push_back("user entry without user_id");
        continue;
      }
      if (!seen.insert(user.user_id).second) {
        errors.push_back("duplicate user_id '" + user.user_id + "'");
      }
      if (!u.contains("theta") || !u["theta"].is_object()) {
        errors.push_back("user '" + user.user_id + "': missing theta object");
        continue;
      }
      for (auto it = u["theta"].begin(); it != u["theta"].end(); ++it) {
        try {
          user.theta[static_cast<int>(factor_from_name(it.key()))] =
              it.value().get<double>();
        } catch (const Error& e) {
          errors.push_back("user '" + user.user_id + "': " + e.what());
        }
      }
      try {
        user.validate();
        sc.simulation.users.push_back(std::move(user));
      } catch (const Error& e) {
        errors.push_back(e.what());
      }
    }
  }

  // Simulation block.
  if (j.contains("simulation")) {
    const auto& s = j["simulation"];
    sc.simulation.horizon_hours =
        static_cast<int>(detail::json_number(s, "horizon_hours", errors, 72));
    sc.simulation.dt_hours =
        static_cast<int>(detail::json_number(s, "dt_hours", errors, 1));
    sc.simulation.lambda_per_hour =
        detail::json_number(s, "lambda_per_hour", errors, 10.0);
    if (s.contains("power_range_kw") && s["power_range_kw"].is_array() &&
        s["power_range_kw"].size() == 2) {
      sc.simulation.power_min_kw = s["power_range_kw"][0].get<double>();
      sc.simulation.power_max_kw = s["power_range_kw"][1].get<double>();
    }
    if (s.contains("lifetime_range_h") && s["lifetime_range_h"].is_array() &&
        s["lifetime_range_h"].size() == 2) {
      sc.simulation.lifetime_min_h = s["lifetime_range_h"][0].get<int>();
      sc.simulation.lifetime_max_h = s["lifetime_range_h"][1].get<int>();
    }
    if (s.contains("seed")) sc.simulation.seed = s["seed"].get<std::uint64_t>();
  }

  // Scheduler block.
  if (j.contains("scheduler")) {
    const auto& s = j["scheduler"];
    sc.scheduler.alpha = detail::json_number(s, "alpha", errors, 0.1);
    std::string cap = s.value("capacity_mode", std::string("concurrent"));
    if (cap == "concurrent") {
      sc.scheduler.capacity_mode = CapacityMode::kConcurrent;
    } else if (cap == "incoming") {
      sc.scheduler.capacity_mode = CapacityMode::kIncoming;
    } else {
      errors.push_back("scheduler.capacity_mode must be 'concurrent' or 'incoming'");
    }
    if (s.contains("migration")) sc.scheduler.migration_enabled = s["migration"].get<bool>();
    std::string norm = s.value("normalization", std::string("minmax"));
    if (norm == "minmax") {
      sc.scheduler.normalization = Normalization::kMinMax;
    } else if (norm == "none") {
      sc.scheduler.normalization = Normalization::kNone;
    } else {
      errors.push_back("scheduler.normalization must be 'minmax' or 'none'");
    }
    std::string pol = s.value("infeasibility", std::string("defer"));
    if (pol == "defer") {
      sc.scheduler.infeasibility_policy = InfeasibilityPolicy::kDefer;
    } else if (pol == "error") {
      sc.scheduler.infeasibility_policy = InfeasibilityPolicy::kError;
    } else {
      errors.push_back("scheduler.infeasibility must be 'defer' or 'error'");
    }
  }

  // Cross references: every facility's region must resolve; in mix mode,
  // also probe the backend at the start hour so dangling fixture entries
  // surface at load time.
  for (const auto& dc : sc.fleet) {
    if (!known_regions.count(dc.region.region_id)) {
      errors.push_back("dc '" + dc.dc_id + "' references unknown region '" +
                       dc.region.region_id + "'");
    } else if (provider) {
      try {
        provider->at(dc.region.region_id, sc.simulation.start_utc).validate();
      } catch (const Error& e) {
        errors.push_back("dc '" + dc.dc_id + "': " + e.what());
      }
    }
  }
  if (sc.fleet.empty()) errors.push_back("fleet is empty");

  try {
    if (!sc.simulation.users.empty()) sc.simulation.validate();
    sc.scheduler.validate();
  } catch (const Error& e) {
    errors.push_back(e.what());
  }

  if (!errors.empty()) {
    std::string msg = "scenario '" + path + "' is invalid:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw Error(msg);
  }
  return sc;
}

}  // namespace ecoorc

#endif  // ECOORC_SCENARIO_HPP_
