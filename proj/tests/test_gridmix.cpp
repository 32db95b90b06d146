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

#include <atomic>
#include <catch2/catch_amalgamated.hpp>
#include <fstream>

#include "ecoorc/csv.hpp"
#include "ecoorc/gridmix.hpp"
#include "ecoorc/rng.hpp"
#include "ecoorc/scenario.hpp"
#include "test_util.hpp"

using namespace ecoorc;
using Catch::Matchers::WithinRel;

namespace {

SourceFactors two_source_factors() {
  SourceFactors f;
  f.by_source["coal"] = {820.0, 1.9, 1.5e-5};
  f.by_source["wind"] = {11.0, 0.005, 2.0e-6};
  return f;
}

}  // namespace

TEST_CASE("mix_to_intensity is a share-weighted average") {
  auto f = two_source_factors();
  SECTION("single source identity") {
    SourceMix mix{"r", {{"coal", 1.0}}};
    CHECK(mix_to_intensity(mix, f, IntensityKind::kCarbon) == 820.0);
  }
  SECTION("even blend") {
    SourceMix mix{"r", {{"coal", 0.5}, {"wind", 0.5}}};
    CHECK_THAT(mix_to_intensity(mix, f, IntensityKind::kCarbon),
               WithinRel(415.5, 1e-12));
  }
  SECTION("zero factors give zero") {
    SourceFactors zero;
    zero.by_source["coal"] = {};
    zero.by_source["wind"] = {};
    SourceMix mix{"r", {{"coal", 0.3}, {"wind", 0.7}}};
    CHECK(mix_to_intensity(mix, zero, IntensityKind::kWater) == 0.0);
  }
  SECTION("unknown source falls back to the mix's own mean") {
    SourceMix mix{"r", {{"coal", 0.5}, {"mystery", 0.5}}};
    // fallback = mean of known sources = 820, so the blend stays 820
    CHECK_THAT(mix_to_intensity(mix, f, IntensityKind::kCarbon),
               WithinRel(820.0, 1e-12));
  }
  SECTION("declared fallback wins") {
    auto g = f;
    g.fallback = SourceFactors::Entry{300.0, 1.0, 1e-5};
    SourceMix mix{"r", {{"coal", 0.5}, {"mystery", 0.5}}};
    CHECK_THAT(mix_to_intensity(mix, g, IntensityKind::kCarbon),
               WithinRel(0.5 * 820.0 + 0.5 * 300.0, 1e-12));
  }
  SECTION("unknown source with nothing to fall back on names itself") {
    SourceMix mix{"r", {{"mystery", 1.0}}};
    CHECK_THROWS_WITH(mix_to_intensity(mix, f, IntensityKind::kCarbon),
                      Catch::Matchers::ContainsSubstring("mystery"));
  }
  SECTION("bad shares are rejected") {
    SourceMix short_mix{"r", {{"coal", 0.5}}};
    CHECK_THROWS_AS(mix_to_intensity(short_mix, f, IntensityKind::kCarbon), Error);
    SourceMix neg{"r", {{"coal", 1.5}, {"wind", -0.5}}};
    CHECK_THROWS_AS(mix_to_intensity(neg, f, IntensityKind::kCarbon), Error);
  }
}

TEST_CASE("mix_to_intensity properties") {
  SplitMix64 rng(31);
  const char* names[] = {"coal", "gas", "wind", "solar", "hydro"};
  for (int trial = 0; trial < 1000; ++trial) {
    SourceFactors f;
    for (const char* n : names) {
      f.by_source[n] = {rng.uniform(0.0, 900.0), rng.uniform(0.0, 5.0),
                        rng.uniform(0.0, 1e-4)};
    }
    SourceMix mix;
    mix.region_id = "r";
    double total = 0.0;
    for (const char* n : names) {
      double s = rng.uniform(0.0, 1.0);
      mix.shares[n] = s;
      total += s;
    }
    for (auto& [n, s] : mix.shares) s /= total;

    double base = mix_to_intensity(mix, f, IntensityKind::kCarbon);
    // convexity: the blend lies between the extreme participating factors
    double lo = 1e300, hi = -1e300;
    for (const auto& [n, s] : mix.shares) {
      if (s <= 0.0) continue;
      lo = std::min(lo, f.by_source[n].ci);
      hi = std::max(hi, f.by_source[n].ci);
    }
    CHECK(base >= lo - 1e-9);
    CHECK(base <= hi + 1e-9);
    // monotonicity: raising one factor never lowers the blend
    auto g = f;
    const char* bumped = names[rng.index(5)];
    g.by_source[bumped].ci += rng.uniform(0.0, 100.0);
    CHECK(mix_to_intensity(mix, g, IntensityKind::kCarbon) >= base - 1e-12);
  }
}

TEST_CASE("region_profile_from_mix assembles a full profile") {
  auto f = two_source_factors();
  SECTION("zero factors pass wsf and cclf through") {
    SourceFactors zero;
    zero.by_source["coal"] = {};
    SourceMix mix{"r1", {{"coal", 1.0}}};
    RegionProfile r = region_profile_from_mix(mix, zero, 0.25, 330.0);
    CHECK(r.region_id == "r1");
    CHECK(r.ci_grid == 0.0);
    CHECK(r.ewif_grid == 0.0);
    CHECK(r.elif_grid == 0.0);
    CHECK(r.wsf == 0.25);
    CHECK(r.cclf == 330.0);
  }
  SECTION("blended carbon intensity") {
    SourceMix mix{"r1", {{"coal", 0.5}, {"wind", 0.5}}};
    CHECK_THAT(region_profile_from_mix(mix, f, 0.0, 0.0).ci_grid,
               WithinRel(415.5, 1e-12));
  }
  SECTION("round-trips through the region CSV format") {
    SourceMix mix{"r1", {{"coal", 0.37}, {"wind", 0.63}}};
    RegionProfile r = region_profile_from_mix(mix, f, 0.4, 512.5);
    auto dir = testutil::scratch_dir("region_roundtrip");
    std::ofstream out(dir / "regions.csv");
    out << "region_id,ci_g_per_kwh,ewif_l_per_kwh,elif_m2_per_kwh,wsf,cclf_g_per_m2_yr\n"
        << csv::join_row({r.region_id, csv::format_double(r.ci_grid),
                          csv::format_double(r.ewif_grid),
                          csv::format_double(r.elif_grid),
                          csv::format_double(r.wsf), csv::format_double(r.cclf)})
        << "\n";
    out.close();
    auto loaded = load_regions_csv((dir / "regions.csv").string());
    REQUIRE(loaded.count("r1"));
    CHECK(loaded["r1"].ci_grid == r.ci_grid);
    CHECK(loaded["r1"].ewif_grid == r.ewif_grid);
    CHECK(loaded["r1"].elif_grid == r.elif_grid);
    CHECK(loaded["r1"].wsf == r.wsf);
    CHECK(loaded["r1"].cclf == r.cclf);
  }
}

TEST_CASE("fixture mix backend") {
  auto dir = testutil::scratch_dir("fixture_mix");
  {
    std::ofstream out(dir / "mixes.csv");
    out << "region_id,timestamp_utc,source,share\n"
           "r1,2025-05-12T00:00:00Z,coal,0.25\n"
           "r1,2025-05-12T00:00:00Z,wind,0.75\n"
           "r1,2025-05-12T01:00:00Z,coal,0.5\n"
           "r1,2025-05-12T01:00:00Z,wind,0.5\n";
  }
  std::int64_t h0 = timeutil::parse_rfc3339("2025-05-12T00:00:00Z");

  SECTION("returns the row for its hour") {
    FixtureMixBackend b((dir / "mixes.csv").string());
    auto mix = b.fetch("r1", h0);
    CHECK_THAT(mix.shares.at("coal"), WithinRel(0.25, 1e-12));
    auto later = b.fetch("r1", h0 + 3600 + 1800);  // mid-hour maps down
    CHECK_THAT(later.shares.at("coal"), WithinRel(0.5, 1e-12));
  }
  SECTION("deterministic across repeated fetches") {
    FixtureMixBackend b((dir / "mixes.csv").string());
    auto a = b.fetch("r1", h0);
    auto c = b.fetch("r1", h0);
    CHECK(a.shares == c.shares);
  }
  SECTION("requests outside range report the available window") {
    FixtureMixBackend b((dir / "mixes.csv").string());
    CHECK_THROWS_WITH(b.fetch("r1", h0 + 48 * 3600),
                      Catch::Matchers::ContainsSubstring("covers") &&
                          Catch::Matchers::ContainsSubstring("2025-05-12T00:00:00Z"));
  }
  SECTION("unknown region") {
    FixtureMixBackend b((dir / "mixes.csv").string());
    CHECK_THROWS_AS(b.fetch("nowhere", h0), Error);
  }
  SECTION("repeat-first mode turns one row into a static mix") {
    FixtureMixBackend b((dir / "mixes.csv").string(),
                        FixtureMixBackend::Mode::kRepeatFirst);
    auto far = b.fetch("r1", h0 + 400 * 3600);
    CHECK_THAT(far.shares.at("coal"), WithinRel(0.25, 1e-12));
  }
}

TEST_CASE("remote mix backend caches responses on disk") {
  auto dir = testutil::scratch_dir("remote_mix");
  std::atomic<int> calls{0};
  HttpGetFn stub = [&calls](const std::string& url) -> std::string {
    ++calls;
    if (url.find("region=bad") != std::string::npos) {
      throw std::runtime_error("connection refused");
    }
    return R"({"shares": {"coal": 0.25, "wind": 0.75}})";
  };
  RemoteMixBackend backend("http://grid.example", dir / "cache", stub);
  std::int64_t hour = timeutil::parse_rfc3339("2025-05-12T07:00:00Z");

  SECTION("second fetch replays the cached body byte for byte") {
    std::string first = backend.fetch_body("r9", hour);
    CHECK(calls == 1);
    std::string second = backend.fetch_body("r9", hour);
    CHECK(calls == 1);
    CHECK(first == second);
    CHECK(std::filesystem::exists(backend.cache_path("r9", hour)));
    auto mix = backend.fetch("r9", hour);
    CHECK_THAT(mix.shares.at("wind"), WithinRel(0.75, 1e-12));
    CHECK(calls == 1);
  }
  SECTION("distinct keys get distinct cache entries") {
    backend.fetch_body("r9", hour);
    backend.fetch_body("r9", hour + 3600);
    CHECK(calls == 2);
    CHECK(backend.cache_path("r9", hour) != backend.cache_path("r9", hour + 3600));
  }
  SECTION("upstream failure is a RemoteError, not a cache miss") {
    CHECK_THROWS_AS(backend.fetch("bad", hour), RemoteError);
  }
  SECTION("malformed payloads are remote errors too") {
    HttpGetFn garbage = [](const std::string&) { return std::string("not json"); };
    RemoteMixBackend b2("http://grid.example", dir / "cache2", garbage);
    CHECK_THROWS_AS(b2.fetch("r1", hour), RemoteError);
  }
}
