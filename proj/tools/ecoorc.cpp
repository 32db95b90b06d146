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

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecoorc/report.hpp"
#include "ecoorc/scenario.hpp"
#include "ecoorc/simulator.hpp"
#include "ecoorc/wue.hpp"

namespace fs = std::filesystem;
using namespace ecoorc;

namespace {

struct SimulateOpts {
  std::string scenario;
  std::string strategy = "preference";
  std::int64_t seed = -1;       // <0: keep the scenario's seed
  double alpha = -1.0;          // <0: keep the scenario's alpha
  std::string migrate;          // empty: keep the scenario's setting
  std::string out;
};

int parse_bool(const std::string& text) {
  for (const char* yes : {"1", "true", "on", "yes"}) {
    if (text == yes) return 1;
  }
  for (const char* no : {"0", "false", "off", "no"}) {
    if (text == no) return 0;
  }
  throw Error("--migrate expects a boolean, got '" + text + "'");
}

Scenario load_with_overrides(const SimulateOpts& o) {
  Scenario sc = load_scenario(o.scenario);
  if (o.seed >= 0) sc.simulation.seed = static_cast<std::uint64_t>(o.seed);
  if (o.alpha >= 0) sc.scheduler.alpha = o.alpha;
  if (!o.migrate.empty()) sc.scheduler.migration_enabled = parse_bool(o.migrate) != 0;
  if (!o.out.empty()) sc.output_dir = o.out;
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
  return sc;
}

int cmd_simulate(const SimulateOpts& o) {
  Scenario sc = load_with_overrides(o);
  sc.simulation.strategy = strategy_from_name(o.strategy);
  fs::create_directories(sc.output_dir);

  SimulationTrace trace =
      run_simulation(sc.simulation, sc.fleet, *sc.regions, sc.scheduler);

  std::vector<const SimulationTrace*> traces{&trace};
  report::write_file(fs::path(sc.output_dir) / "rounds.csv", report::rounds_csv(trace));
  report::write_file(fs::path(sc.output_dir) / "summary.json",
                     report::summary_json(sc.name, sc.simulation, sc.scheduler, traces)
                             .dump(2) +
                         "\n");
  for (int f = 0; f < kFactorCount; ++f) {
    auto fac = static_cast<Factor>(f);
    report::write_file(
        fs::path(sc.output_dir) / (std::string(factor_name(fac)) + ".svg"),
        report::factor_chart_svg(fac, sc.name + ": " + factor_name(fac), traces,
                                 {strategy_name(trace.strategy)}));
  }
  std::cout << "wrote rounds.csv, summary.json and per-factor charts to "
            << sc.output_dir << "\n";
  return 0;
}

struct CompareOpts {
  std::string scenario;
  std::vector<std::int64_t> seeds;
  int seed_count = 0;
  std::vector<std::string> strategies{"preference", "carbon", "water", "land"};
  std::string migrate = "scenario";  // on|off|both|scenario
  std::string out;
};

int cmd_compare(const CompareOpts& o) {
  Scenario sc = load_scenario(o.scenario);
  if (!o.out.empty()) sc.output_dir = o.out;
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
  fs::create_directories(sc.output_dir);

  std::vector<std::uint64_t> seeds;
  for (auto s : o.seeds) seeds.push_back(static_cast<std::uint64_t>(s));
  for (int i = 0; i < o.seed_count; ++i) {
    seeds.push_back(sc.simulation.seed + static_cast<std::uint64_t>(i));
  }
  if (seeds.empty()) seeds.push_back(sc.simulation.seed);

  std::vector<Strategy> strategies;
  for (const auto& name : o.strategies) strategies.push_back(strategy_from_name(name));

  std::vector<bool> migration_settings;
  if (o.migrate == "both") {
    migration_settings = {true, false};
  } else if (o.migrate == "on") {
    migration_settings = {true};
  } else if (o.migrate == "off") {
    migration_settings = {false};
  } else {
    migration_settings = {sc.scheduler.migration_enabled};
  }

  // traces[migration][seed][strategy]
  std::map<bool, std::map<std::uint64_t, std::map<Strategy, SimulationTrace>>> traces;
  for (bool mig : migration_settings) {
    SchedulerConfig sched = sc.scheduler;
    sched.migration_enabled = mig;
    for (auto seed : seeds) {
      SimulationConfig sim = sc.simulation;
      sim.seed = seed;
      traces[mig][seed] = run_comparison(sim, sc.fleet, *sc.regions, sched, strategies);
    }
  }

  bool primary_mig = migration_settings.front();
  std::vector<const SimulationTrace*> flat;
  for (auto seed : seeds) {
    for (Strategy s : strategies) flat.push_back(&traces[primary_mig][seed][s]);
  }
  report::write_file(fs::path(sc.output_dir) / "comparison.csv",
                     report::comparison_csv(flat));

  // Per-factor overlays for the first seed.
  std::vector<const SimulationTrace*> first_seed;
  std::vector<std::string> labels;
  for (Strategy s : strategies) {
    first_seed.push_back(&traces[primary_mig][seeds.front()][s]);
    labels.push_back(strategy_name(s));
  }
  for (int f = 0; f < kFactorCount; ++f) {
    auto fac = static_cast<Factor>(f);
    report::write_file(
        fs::path(sc.output_dir) / ("compare_" + std::string(factor_name(fac)) + ".svg"),
        report::factor_chart_svg(fac, sc.name + ": " + factor_name(fac), first_seed,
                                 labels));
  }

  if (migration_settings.size() == 2) {
    // Migration-effect report: mean cumulative impact with and without
    // migration, per strategy and factor, plus per-strategy charts.
    std::string csv_out = "strategy,factor,mean_cumulative_with_migration,"
                          "mean_cumulative_without_migration,reduction\n";
    for (Strategy s : strategies) {
      for (int f = 0; f < kFactorCount; ++f) {
        auto fac = static_cast<Factor>(f);
        double with = 0, without = 0;
        for (auto seed : seeds) {
          with += traces[true][seed][s].cumulative[fac];
          without += traces[false][seed][s].cumulative[fac];
        }
        with /= static_cast<double>(seeds.size());
        without /= static_cast<double>(seeds.size());
        csv_out += csv::join_row({strategy_name(s), factor_name(fac),
                                  csv::format_double(with),
                                  csv::format_double(without),
                                  csv::format_double(without - with)}) +
                   "\n";
      }
      for (int f = 0; f < kFactorCount; ++f) {
        auto fac = static_cast<Factor>(f);
        std::vector<const SimulationTrace*> pair{
            &traces[true][seeds.front()][s], &traces[false][seeds.front()][s]};
        report::write_file(
            fs::path(sc.output_dir) / ("migration_" + std::string(strategy_name(s)) +
                                       "_" + factor_name(fac) + ".svg"),
            report::factor_chart_svg(
                fac, std::string(strategy_name(s)) + ": " + factor_name(fac), pair,
                {"migration on", "migration off"},
                {svg::LineStyle::kSolid, svg::LineStyle::kDashed}));
      }
    }
    report::write_file(fs::path(sc.output_dir) / "migration_effect.csv", csv_out);
  }
  std::cout << "wrote comparison.csv and charts to " << sc.output_dir << "\n";
  return 0;
}

struct WueOpts {
  std::string weather;
  double s = 10.0;
  double declared = -1.0;
  std::string out = "out";
};

int cmd_wue(const WueOpts& o) {
  auto samples = load_weather_csv(o.weather);
  WueModelConfig cfg;
  cfg.s = o.s;
  std::vector<std::string> warnings;
  auto series = hourly_wue_series(samples, cfg, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(o.out);
  std::string csv_out = "timestamp_utc,wet_bulb_f,wue_l_per_kwh\n";
  svg::Series est{"estimated WUE", {}, {}, svg::LineStyle::kSolid};
  svg::Series wb{"wet-bulb (F)", {}, {}, svg::LineStyle::kDotted};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double tw = wet_bulb_f(samples[i]);
    csv_out += csv::join_row({timeutil::format_rfc3339(series[i].first),
                              csv::format_double(tw),
                              csv::format_double(series[i].second)}) +
               "\n";
    double hour = static_cast<double>(i);
    est.x.push_back(hour);
    est.y.push_back(series[i].second);
    wb.x.push_back(hour);
    wb.y.push_back(tw);
  }
  report::write_file(fs::path(o.out) / "wue_hourly.csv", csv_out);

  svg::LineChart chart("hourly WUE estimate", "hour", "l/kWh (and F)");
  chart.add_series(est);
  if (o.declared >= 0 && !samples.empty()) {
    svg::Series decl{"declared annual WUE", {}, {}, svg::LineStyle::kDashed};
    decl.x = {0.0, static_cast<double>(samples.size() - 1)};
    decl.y = {o.declared, o.declared};
    chart.add_series(decl);
  }
  chart.add_series(wb);
  report::write_file(fs::path(o.out) / "wue.svg", chart.render());
  std::cout << "wrote wue_hourly.csv and wue.svg to " << o.out << "\n";
  return 0;
}

struct ProfileOpts {
  std::string scenario;
  std::string out;
};

int cmd_profile(const ProfileOpts& o) {
  Scenario sc = load_scenario(o.scenario);
  if (!o.out.empty()) sc.output_dir = o.out;
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
  fs::create_directories(sc.output_dir);
  report::write_file(fs::path(sc.output_dir) / "profiles.csv", report::profiles_csv(sc));
  report::write_file(fs::path(sc.output_dir) / "ranking.csv", report::ranking_csv(sc));
  std::cout << "wrote profiles.csv and ranking.csv to " << sc.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"environmentally-conscious job placement across geo-distributed data centers"};
  app.require_subcommand(1);

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "run one strategy over a scenario");
  simulate->add_option("--scenario", sim.scenario, "scenario JSON file")
      ->required()
      ->envname("ECOORC_SCENARIO");
  simulate->add_option("--strategy", sim.strategy,
                       "preference|carbon|water|land|ewaste")
      ->envname("ECOORC_STRATEGY");
  simulate->add_option("--seed", sim.seed, "workload seed")->envname("ECOORC_SEED");
  simulate->add_option("--alpha", sim.alpha, "migration improvement threshold")
      ->envname("ECOORC_ALPHA");
  simulate->add_option("--migrate", sim.migrate,
                       "enable migration (true/false/on/off/1/0)")
      ->envname("ECOORC_MIGRATE");
  simulate->add_option("--out", sim.out, "output directory")->envname("ECOORC_OUT");

  CompareOpts cmp;
  auto* compare = app.add_subcommand("compare", "run strategies side by side");
  compare->add_option("--scenario", cmp.scenario, "scenario JSON file")
      ->required()
      ->envname("ECOORC_SCENARIO");
  compare->add_option("--seeds", cmp.seeds, "explicit seed list")
      ->delimiter(',')
      ->envname("ECOORC_SEEDS");
  compare->add_option("--seed-count", cmp.seed_count,
                      "number of seeds, counting up from the scenario seed")
      ->envname("ECOORC_SEED_COUNT");
  compare->add_option("--strategies", cmp.strategies, "strategies to run")
      ->delimiter(',')
      ->envname("ECOORC_STRATEGIES");
  compare->add_option("--migrate", cmp.migrate, "on|off|both|scenario")
      ->envname("ECOORC_MIGRATE");
  compare->add_option("--out", cmp.out, "output directory")->envname("ECOORC_OUT");

  WueOpts wue;
  auto* wuecmd = app.add_subcommand("wue", "hourly WUE estimate from weather data");
  wuecmd->add_option("--weather", wue.weather, "weather CSV")
      ->required()
      ->envname("ECOORC_WEATHER");
  wuecmd->add_option("--s", wue.s, "cycles of concentration (default 10)")
      ->envname("ECOORC_S");
  wuecmd->add_option("--declared", wue.declared, "declared annual WUE overlay")
      ->envname("ECOORC_DECLARED");
  wuecmd->add_option("--out", wue.out, "output directory")->envname("ECOORC_OUT");

  ProfileOpts prof;
  auto* profile = app.add_subcommand("profile", "per-kWh sustainability profiles");
  profile->add_option("--scenario", prof.scenario, "scenario JSON file")
      ->required()
      ->envname("ECOORC_SCENARIO");
  profile->add_option("--out", prof.out, "output directory")->envname("ECOORC_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (compare->parsed()) return cmd_compare(cmp);
    if (wuecmd->parsed()) return cmd_wue(wue);
    if (profile->parsed()) return cmd_profile(prof);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
