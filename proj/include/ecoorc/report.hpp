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

#ifndef ECOORC_REPORT_HPP_
#define ECOORC_REPORT_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "ecoorc/csv.hpp"
#include "ecoorc/scenario.hpp"
#include "ecoorc/simulator.hpp"
#include "ecoorc/svg.hpp"
#include "json.hpp"

namespace ecoorc {
namespace report {

inline const char* kRoundsHeader =
    "t_hour,strategy,carbon_g,water_l,land_g,ewaste_g,active_jobs,migrations,deferred";

inline std::string rounds_row(const SimulationTrace& trace, const RoundRecord& r) {
  return csv::join_row({std::to_string(r.t_hour), strategy_name(trace.strategy),
                        csv::format_double(r.total.carbon_g),
                        csv::format_double(r.total.water_l),
                        csv::format_double(r.total.land_g),
                        csv::format_double(r.total.ewaste_g),
                        std::to_string(r.active_jobs),
                        std::to_string(r.migration_count),
                        std::to_string(r.deferred_count)});
}

inline std::string rounds_csv(const SimulationTrace& trace) {
  std::string out = std::string(kRoundsHeader) + "\n";
  for (const auto& r : trace.rounds) out += rounds_row(trace, r) + "\n";
  return out;
}

/// comparison.csv carries the same row shape plus the seed, one block per
/// (strategy, seed) run.
inline std::string comparison_csv(const std::vector<const SimulationTrace*>& traces) {
  std::string out =
      "t_hour,strategy,seed,carbon_g,water_l,land_g,ewaste_g,active_jobs,"
      "migrations,deferred\n";
  for (const auto* t : traces) {
    for (const auto& r : t->rounds) {
      out += csv::join_row({std::to_string(r.t_hour), strategy_name(t->strategy),
                            std::to_string(t->seed),
                            csv::format_double(r.total.carbon_g),
                            csv::format_double(r.total.water_l),
                            csv::format_double(r.total.land_g),
                            csv::format_double(r.total.ewaste_g),
                            std::to_string(r.active_jobs),
                            std::to_string(r.migration_count),
                            std::to_string(r.deferred_count)}) +
             "\n";
    }
  }
  return out;
}

inline nlohmann::json footprint_json(const FootprintVector& v) {
  return {{"carbon_g", v.carbon_g},
          {"water_l", v.water_l},
          {"land_g", v.land_g},
          {"ewaste_g", v.ewaste_g}};
}

/// Cumulative totals per strategy plus an echo of the effective
/// configuration, so a summary is self-describing.
inline nlohmann::json summary_json(const std::string& scenario_name,
                                   const SimulationConfig& sim,
                                   const SchedulerConfig& sched,
                                   const std::vector<const SimulationTrace*>& traces) {
  nlohmann::json cfg = {
      {"scenario", scenario_name},
      {"seed", sim.seed},
      {"horizon_hours", sim.horizon_hours},
      {"dt_hours", sim.dt_hours},
      {"lambda_per_hour", sim.lambda_per_hour},
      {"power_range_kw", {sim.power_min_kw, sim.power_max_kw}},
      {"lifetime_range_h", {sim.lifetime_min_h, sim.lifetime_max_h}},
      {"start_utc", timeutil::format_rfc3339(sim.start_utc)},
      {"alpha", sched.alpha},
      {"capacity_mode",
       sched.capacity_mode == CapacityMode::kConcurrent ? "concurrent" : "incoming"},
      {"migration", sched.migration_enabled},
      {"normalization",
       sched.normalization == Normalization::kMinMax ? "minmax" : "none"},
      {"infeasibility",
       sched.infeasibility_policy == InfeasibilityPolicy::kDefer ? "defer" : "error"},
  };
  nlohmann::json strategies = nlohmann::json::object();
  for (const auto* t : traces) {
    int migrations = 0, deferred = 0;
    for (const auto& r : t->rounds) {
      migrations += r.migration_count;
      deferred += r.deferred_count;
    }
    strategies[strategy_name(t->strategy)] = {
        {"cumulative", footprint_json(t->cumulative)},
        {"rounds", t->rounds.size()},
        {"migrations", migrations},
        {"deferred", deferred},
        {"seed", t->seed},
    };
  }
  return {{"config", cfg}, {"strategies", strategies}};
}

inline std::string factor_unit(Factor f) {
  switch (f) {
    case Factor::kCarbon: return "gCO2";
    case Factor::kWater: return "l";
    case Factor::kLand: return "gCO2 capture loss";
    case Factor::kEwaste: return "g";
  }
  return "";
}

/// One chart per factor: per-round footprint over time, one series per
/// trace (labelled by strategy, or strategy+variant for migration
/// studies).
inline std::string factor_chart_svg(Factor f, const std::string& title,
                                    const std::vector<const SimulationTrace*>& traces,
                                    const std::vector<std::string>& labels,
                                    const std::vector<svg::LineStyle>& styles = {}) {
  svg::LineChart chart(title, "hour", std::string(factor_name(f)) + " per round (" +
                                          factor_unit(f) + ")");
  for (std::size_t i = 0; i < traces.size(); ++i) {
    svg::Series s;
    s.label = labels[i];
    s.style = i < styles.size() ? styles[i] : svg::LineStyle::kSolid;
    for (const auto& r : traces[i]->rounds) {
      s.x.push_back(r.t_hour);
      s.y.push_back(r.total[f]);
    }
    chart.add_series(std::move(s));
  }
  return chart.render();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

/// Per-facility per-kWh profile table, evaluated at the simulation start
/// hour.
inline std::string profiles_csv(const Scenario& sc) {
  std::string out = "dc_id,region_id,carbon_g_per_kwh,water_l_per_kwh,land_g_per_kwh,ewaste_g_per_kwh\n";
  for (const auto& dc : sc.fleet) {
    DataCenterProfile d = dc;
    d.region = sc.regions->at(dc.region.region_id, sc.simulation.start_utc);
    FootprintVector p = per_kwh_profile(d);
    out += csv::join_row({d.dc_id, d.region.region_id,
                          csv::format_double(p.carbon_g),
                          csv::format_double(p.water_l),
                          csv::format_double(p.land_g),
                          csv::format_double(p.ewaste_g)}) +
           "\n";
  }
  return out;
}

/// Ascending per-factor ranking of the fleet's per-kWh profiles.
inline std::string ranking_csv(const Scenario& sc) {
  std::vector<std::pair<std::string, FootprintVector>> profiles;
  for (const auto& dc : sc.fleet) {
    DataCenterProfile d = dc;
    d.region = sc.regions->at(dc.region.region_id, sc.simulation.start_utc);
    profiles.emplace_back(d.dc_id, per_kwh_profile(d));
  }
  std::string out = "factor,rank,dc_id,value_per_kwh\n";
  for (int f = 0; f < kFactorCount; ++f) {
    auto fac = static_cast<Factor>(f);
    auto sorted = profiles;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [fac](const auto& a, const auto& b) {
                       if (a.second[fac] != b.second[fac]) {
                         return a.second[fac] < b.second[fac];
                       }
                       return a.first < b.first;
                     });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      out += csv::join_row({factor_name(fac), std::to_string(i + 1),
                            sorted[i].first,
                            csv::format_double(sorted[i].second[fac])}) +
             "\n";
    }
  }
  return out;
}

}  // namespace report
}  // namespace ecoorc

#endif  // ECOORC_REPORT_HPP_
