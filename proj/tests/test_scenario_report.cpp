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

#include <catch2/catch_amalgamated.hpp>
#include <fstream>

#include "ecoorc/report.hpp"
#include "ecoorc/rng.hpp"
#include "ecoorc/scenario.hpp"
#include "test_util.hpp"

using namespace ecoorc;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

void write(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

std::filesystem::path minimal_scenario_dir(const std::string& tag) {
  auto dir = testutil::scratch_dir(tag);
  write(dir / "fleet.csv",
        "dc_id,region_id,pue,wue_l_per_kwh,p_onsite,ci_onsite_g_per_kwh,"
        "ewif_onsite_l_per_kwh,area_m2,annual_it_energy_kwh,ewi_g_per_kwh,s_max\n"
        "dc1,r1,1.2,0.5,0,0,0,1000,1000000,0.01,5\n");
  write(dir / "regions.csv",
        "region_id,ci_g_per_kwh,ewif_l_per_kwh,elif_m2_per_kwh,wsf,cclf_g_per_m2_yr\n"
        "r1,400,1.5,0.00002,0.3,500\n");
  write(dir / "scenario.json", R"({
  "name": "mini",
  "fleet": "fleet.csv",
  "regions": {"static": "regions.csv"},
  "users": [{"user_id": "u1", "theta": {"carbon": 1.0}}],
  "simulation": {"horizon_hours": 4, "lambda_per_hour": 2, "seed": 3},
  "scheduler": {"alpha": 0.1}
})");
  return dir;
}

}  // namespace

TEST_CASE("a minimal scenario loads") {
  auto dir = minimal_scenario_dir("minimal");
  Scenario sc = load_scenario((dir / "scenario.json").string());
  CHECK(sc.name == "mini");
  REQUIRE(sc.fleet.size() == 1);
  CHECK(sc.fleet[0].dc_id == "dc1");
  CHECK(sc.simulation.users.size() == 1);
  CHECK(sc.simulation.horizon_hours == 4);
  CHECK(sc.scheduler.alpha == 0.1);
  CHECK(sc.regions->at("r1", 0).ci_grid == 400.0);
  CHECK(sc.warnings.empty());
}

TEST_CASE("scenario validation enumerates all violations") {
  auto dir = minimal_scenario_dir("invalid");
  // two independent problems: an unknown region and a duplicate dc_id
  write(dir / "fleet.csv",
        "dc_id,region_id,pue,wue_l_per_kwh,p_onsite,ci_onsite_g_per_kwh,"
        "ewif_onsite_l_per_kwh,area_m2,annual_it_energy_kwh,ewi_g_per_kwh,s_max\n"
        "dc1,r_missing,1.2,0.5,0,0,0,1000,1000000,0.01,5\n"
        "dc1,r1,1.1,0.4,0,0,0,2000,2000000,0.02,5\n");
  try {
    load_scenario((dir / "scenario.json").string());
    FAIL("expected a validation error");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK_THAT(msg, ContainsSubstring("r_missing"));
    CHECK_THAT(msg, ContainsSubstring("duplicate dc_id 'dc1'"));
  }
}

TEST_CASE("missing files and malformed JSON are reported with context") {
  CHECK_THROWS_WITH(load_scenario("/nonexistent/scenario.json"),
                    ContainsSubstring("/nonexistent/scenario.json"));
  auto dir = testutil::scratch_dir("badjson");
  write(dir / "scenario.json", "{ not json");
  CHECK_THROWS_WITH(load_scenario((dir / "scenario.json").string()),
                    ContainsSubstring("scenario.json"));
}

TEST_CASE("facilities without land data warn, or fail in strict mode") {
  auto dir = minimal_scenario_dir("noland");
  write(dir / "fleet.csv",
        "dc_id,region_id,pue,wue_l_per_kwh,p_onsite,ci_onsite_g_per_kwh,"
        "ewif_onsite_l_per_kwh,area_m2,annual_it_energy_kwh,ewi_g_per_kwh,s_max\n"
        "dc1,r1,1.2,0.5,0,0,0,,,0.01,5\n");
  Scenario sc = load_scenario((dir / "scenario.json").string());
  REQUIRE(sc.warnings.size() == 1);
  CHECK_THAT(sc.warnings[0], ContainsSubstring("no land data"));
  DataCenterProfile dc = sc.fleet[0];
  dc.region = sc.regions->at("r1", 0);
  // the facility still participates; only the on-site land term is zero
  CHECK(per_kwh_profile(dc).land_g == land_offsite(1.0, dc));

  SECTION("strict mode rejects the dataset") {
    write(dir / "scenario.json", R"({
  "name": "mini",
  "missing_data": "strict",
  "fleet": "fleet.csv",
  "regions": {"static": "regions.csv"},
  "users": [{"user_id": "u1", "theta": {"carbon": 1.0}}]
})");
    CHECK_THROWS_WITH(load_scenario((dir / "scenario.json").string()),
                      ContainsSubstring("strict"));
  }
}

TEST_CASE("bundled scenarios load with the documented fleet sizes") {
  Scenario meta = load_scenario(testutil::data_file("scenario_meta.json"));
  CHECK(meta.fleet.size() == 13);
  CHECK(meta.warnings.empty());
  for (const auto& dc : meta.fleet) {
    CHECK(dc.s_max == 5);
    CHECK(dc.pue == 1.08);
    CHECK(dc.has_land_data());
  }
  Scenario cloud = load_scenario(testutil::data_file("scenario_cloud.json"));
  CHECK(cloud.fleet.size() == 24);
  Scenario meta_static = load_scenario(testutil::data_file("scenario_meta_static.json"));
  CHECK(meta_static.fleet.size() == 13);
}

TEST_CASE("mix-backed scenarios resolve regions through the backend") {
  Scenario sc = load_scenario(testutil::data_file("scenario_meta.json"));
  auto r0 = sc.regions->at("US-IA", sc.simulation.start_utc);
  CHECK(r0.ci_grid > 0.0);
  auto r1 = sc.regions->at("US-IA", sc.simulation.start_utc + 3600);
  // hourly mode: the mix moves between hours
  CHECK(r0.ci_grid != r1.ci_grid);

  Scenario st = load_scenario(testutil::data_file("scenario_meta_static.json"));
  auto s0 = st.regions->at("US-IA", st.simulation.start_utc);
  auto s1 = st.regions->at("US-IA", st.simulation.start_utc + 7 * 3600);
  CHECK(s0.ci_grid == s1.ci_grid);
}

TEST_CASE("numeric formatting round-trips exactly") {
  SplitMix64 rng(2718);
  for (int i = 0; i < 1000; ++i) {
    double x = std::exp2(rng.uniform(-40.0, 40.0)) * (rng.index(2) ? 1 : -1);
    std::string s = csv::format_double(x);
    CHECK(csv::parse_double(s, "roundtrip") == x);
  }
  CHECK(csv::format_double(0.0) == "0");
}

TEST_CASE("RFC3339 timestamps round-trip") {
  SplitMix64 rng(161803);
  for (int i = 0; i < 1000; ++i) {
    std::int64_t ts = static_cast<std::int64_t>(rng.index(4102444800ull));
    ts -= ts % 60;  // format has no sub-minute surprises either way
    CHECK(timeutil::parse_rfc3339(timeutil::format_rfc3339(ts)) == ts);
  }
  CHECK(timeutil::parse_rfc3339("2025-05-12T00:00:00Z") == 1747008000);
  CHECK_THROWS_AS(timeutil::parse_rfc3339("yesterday"), Error);
}

TEST_CASE("CSV quoting survives the loader") {
  auto row = csv::split_row(csv::join_row({"plain", "with,comma", "with\"quote"}));
  REQUIRE(row.size() == 3);
  CHECK(row[1] == "with,comma");
  CHECK(row[2] == "with\"quote");
}

TEST_CASE("weather loader reports the offending row") {
  auto dir = testutil::scratch_dir("weather");
  write(dir / "weather.csv",
        "timestamp_utc,temp_c,dewpoint_c\n"
        "2025-05-12T00:00:00Z,20,10\n"
        "2025-05-12T01:00:00Z,20,notanumber\n");
  CHECK_THROWS_WITH(load_weather_csv((dir / "weather.csv").string()),
                    ContainsSubstring("row 3"));
  write(dir / "weather2.csv",
        "timestamp_utc,temp_c,dewpoint_c\n"
        "2025-05-12T00:00:00Z,10,20\n");
  CHECK_THROWS_WITH(load_weather_csv((dir / "weather2.csv").string()),
                    ContainsSubstring("dewpoint_c above temp_c"));
}

namespace {

SimulationTrace tiny_trace(const Scenario& sc) {
  SimulationConfig cfg = sc.simulation;
  cfg.horizon_hours = 6;
  cfg.lambda_per_hour = 3.0;
  return run_simulation(cfg, sc.fleet, *sc.regions, sc.scheduler);
}

}  // namespace

TEST_CASE("emitted artifacts are consistent and parseable") {
  auto dir = minimal_scenario_dir("emission");
  Scenario sc = load_scenario((dir / "scenario.json").string());
  auto trace = tiny_trace(sc);

  SECTION("rounds.csv re-parses with the artifact's own CSV reader") {
    auto out = testutil::scratch_dir("rounds_out");
    report::write_file(out / "rounds.csv", report::rounds_csv(trace));
    auto table = csv::read_table((out / "rounds.csv").string());
    REQUIRE(table.rows.size() == trace.rounds.size());
    CHECK(table.column("carbon_g") == 2);
    double total = 0;
    int col = table.column("water_l");
    for (const auto& row : table.rows) {
      total += csv::parse_double(row[col], "rounds.csv");
    }
    CHECK_THAT(total, WithinRel(trace.cumulative.water_l, 1e-12));
  }

  SECTION("summary cumulative totals match the rounds columns") {
    auto doc = report::summary_json(sc.name, sc.simulation, sc.scheduler, {&trace});
    FootprintVector sum;
    for (const auto& rec : trace.rounds) sum += rec.total;
    auto cum = doc["strategies"]["preference"]["cumulative"];
    CHECK_THAT(cum["carbon_g"].get<double>(), WithinRel(sum.carbon_g, 1e-6));
    CHECK_THAT(cum["water_l"].get<double>(), WithinRel(sum.water_l, 1e-6));
    CHECK_THAT(cum["land_g"].get<double>(), WithinRel(sum.land_g, 1e-6));
    CHECK_THAT(cum["ewaste_g"].get<double>(), WithinRel(sum.ewaste_g, 1e-6));
    CHECK(doc["config"]["scenario"] == "mini");
  }

  SECTION("charts are well-formed XML with one polyline per series") {
    auto svg_text = report::factor_chart_svg(Factor::kCarbon, "t", {&trace},
                                             {"preference"});
    CHECK(testutil::xml_well_formed(svg_text));
    CHECK(testutil::count_occurrences(svg_text, "<polyline") == 1);

    auto trace2 = trace;
    auto two = report::factor_chart_svg(Factor::kWater, "t", {&trace, &trace2},
                                        {"a", "b"});
    CHECK(testutil::xml_well_formed(two));
    CHECK(testutil::count_occurrences(two, "<polyline") == 2);
  }

  SECTION("comparison.csv includes the seed column") {
    auto text = report::comparison_csv({&trace});
    auto table_dir = testutil::scratch_dir("cmp_out");
    report::write_file(table_dir / "comparison.csv", text);
    auto table = csv::read_table((table_dir / "comparison.csv").string());
    CHECK(table.column("seed") == 2);
    REQUIRE(!table.rows.empty());
    CHECK(table.rows[0][table.column("strategy")] == "preference");
  }
}

TEST_CASE("profile table and rankings") {
  Scenario sc = load_scenario(testutil::data_file("scenario_meta.json"));
  auto dir = testutil::scratch_dir("profiles");
  report::write_file(dir / "profiles.csv", report::profiles_csv(sc));
  report::write_file(dir / "ranking.csv", report::ranking_csv(sc));

  auto profiles = csv::read_table((dir / "profiles.csv").string());
  REQUIRE(profiles.rows.size() == 13);

  // ranking must agree with an ascending sort of the profile column
  auto ranking = csv::read_table((dir / "ranking.csv").string());
  int c_factor = ranking.column("factor");
  int c_value = ranking.column("value_per_kwh");
  double prev = -1.0;
  std::size_t water_rows = 0;
  for (const auto& row : ranking.rows) {
    if (row[c_factor] != "water") continue;
    double v = csv::parse_double(row[c_value], "ranking");
    CHECK(v >= prev);
    prev = v;
    ++water_rows;
  }
  CHECK(water_rows == 13);
}

TEST_CASE("single-row profile table for a one-facility scenario") {
  auto dir = minimal_scenario_dir("oneprof");
  Scenario sc = load_scenario((dir / "scenario.json").string());
  auto out = testutil::scratch_dir("oneprof_out");
  report::write_file(out / "profiles.csv", report::profiles_csv(sc));
  auto table = csv::read_table((out / "profiles.csv").string());
  REQUIRE(table.rows.size() == 1);
  // carbon per kWh = PUE x grid CI at one kWh
  CHECK_THAT(csv::parse_double(table.rows[0][table.column("carbon_g_per_kwh")], "p"),
             WithinRel(1.2 * 400.0, 1e-12));
}
