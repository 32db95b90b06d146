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

#include "ecoorc/footprint.hpp"
#include "ecoorc/rng.hpp"
#include "test_util.hpp"

using namespace ecoorc;
using Catch::Matchers::WithinRel;

namespace {

DataCenterProfile make_dc() {
  DataCenterProfile dc;
  dc.dc_id = "dc";
  dc.region.region_id = "r";
  return dc;
}

DataCenterProfile random_dc(SplitMix64& rng) {
  DataCenterProfile dc = make_dc();
  dc.pue = 1.0 + rng.uniform(0.0, 0.6);
  dc.wue = rng.uniform(0.0, 3.0);
  dc.p_onsite = rng.uniform(0.0, 1.0);
  dc.ci_onsite = rng.uniform(0.0, 600.0);
  dc.ewif_onsite = rng.uniform(0.0, 3.0);
  dc.area = rng.uniform(1e3, 1e6);
  dc.annual_it_energy = rng.uniform(1e7, 1e9);
  dc.ewi = rng.uniform(0.0, 0.1);
  dc.region.ci_grid = rng.uniform(0.0, 900.0);
  dc.region.ewif_grid = rng.uniform(0.0, 4.0);
  dc.region.elif_grid = rng.uniform(0.0, 1e-4);
  dc.region.wsf = rng.uniform(0.0, 1.5);
  dc.region.cclf = rng.uniform(0.0, 1000.0);
  return dc;
}

}  // namespace

TEST_CASE("carbon footprint blends on-site and grid intensity") {
  auto dc = make_dc();
  SECTION("zero energy") { CHECK(carbon_footprint(0.0, dc) == 0.0); }
  SECTION("half on-site") {
    dc.pue = 1.2;
    dc.p_onsite = 0.5;
    dc.ci_onsite = 100.0;
    dc.region.ci_grid = 300.0;
    CHECK_THAT(carbon_footprint(1.0, dc), WithinRel(240.0, 1e-9));
  }
  SECTION("all grid at the Iowa PUE") {
    dc.pue = 1.16;
    dc.p_onsite = 0.0;
    dc.region.ci_grid = 500.0;
    CHECK_THAT(carbon_footprint(10.0, dc), WithinRel(5800.0, 1e-9));
  }
}

TEST_CASE("on-site water footprint") {
  auto dc = make_dc();
  SECTION("zero energy") { CHECK(water_onsite(0.0, dc) == 0.0); }
  SECTION("Iowa WUE under scarcity") {
    dc.wue = 0.19;
    dc.p_onsite = 0.0;
    dc.region.wsf = 0.25;
    CHECK_THAT(water_onsite(2.0, dc), WithinRel(0.475, 1e-9));
  }
  SECTION("degenerates to E * WUE without plant and scarcity") {
    dc.wue = 0.7301;
    dc.p_onsite = 0.0;
    dc.region.wsf = 0.0;
    double e = 3.25;
    CHECK(water_onsite(e, dc) == e * dc.wue);
  }
}

TEST_CASE("off-site water footprint") {
  auto dc = make_dc();
  SECTION("fully on-site powered") {
    dc.p_onsite = 1.0;
    dc.region.ewif_grid = 2.5;
    CHECK(water_offsite(5.0, dc) == 0.0);
  }
  SECTION("all grid") {
    dc.pue = 1.16;
    dc.p_onsite = 0.0;
    dc.region.ewif_grid = 1.9;
    dc.region.wsf = 0.25;
    CHECK_THAT(water_offsite(1.0, dc), WithinRel(2.755, 1e-9));
  }
  SECTION("zero energy") { CHECK(water_offsite(0.0, dc) == 0.0); }
}

TEST_CASE("land-use effectiveness") {
  auto dc = make_dc();
  SECTION("Iowa facility over a hyperscale year") {
    dc.area = 37904.0;
    dc.annual_it_energy = 876000000.0;
    CHECK_THAT(lue(dc), WithinRel(4.3269406392694062e-05, 1e-9));
  }
  SECTION("identity") {
    dc.area = 1.0;
    dc.annual_it_energy = 1.0;
    CHECK(lue(dc) == 1.0);
  }
  SECTION("zero area is a valid degenerate facility") {
    dc.area = 0.0;
    dc.annual_it_energy = 1.0;
    CHECK(lue(dc) == 0.0);
  }
  SECTION("zero annual energy is rejected") {
    dc.area = 10.0;
    dc.annual_it_energy = 0.0;
    CHECK_THROWS_AS(lue(dc), Error);
  }
  SECTION("missing land fields are rejected") {
    CHECK_THROWS_AS(lue(dc), Error);
  }
}

TEST_CASE("on-site land impact") {
  auto dc = make_dc();
  dc.area = 4.3269e-5;
  dc.annual_it_energy = 1.0;  // lue == area
  dc.region.cclf = 200.0;
  SECTION("direct evaluation") {
    CHECK_THAT(land_onsite(100.0, dc), WithinRel(0.86538, 1e-9));
  }
  SECTION("zero energy") { CHECK(land_onsite(0.0, dc) == 0.0); }
  SECTION("no capture loss") {
    dc.region.cclf = 0.0;
    CHECK(land_onsite(100.0, dc) == 0.0);
  }
}

TEST_CASE("off-site land impact") {
  auto dc = make_dc();
  SECTION("direct evaluation") {
    dc.pue = 1.1;
    dc.p_onsite = 0.0;
    dc.region.elif_grid = 0.002;
    dc.region.cclf = 150.0;
    CHECK_THAT(land_offsite(1.0, dc), WithinRel(0.33, 1e-9));
  }
  SECTION("fully on-site powered") {
    dc.p_onsite = 1.0;
    dc.region.elif_grid = 0.5;
    dc.region.cclf = 100.0;
    CHECK(land_offsite(1.0, dc) == 0.0);
  }
  SECTION("zero energy") { CHECK(land_offsite(0.0, dc) == 0.0); }
}

TEST_CASE("e-waste impact") {
  auto dc = make_dc();
  dc.ewi = 0.4;
  CHECK_THAT(ewaste_footprint(50.0, dc), WithinRel(20.0, 1e-9));
  dc.ewi = 0.0;
  CHECK(ewaste_footprint(50.0, dc) == 0.0);
  CHECK(ewaste_footprint(0.0, dc) == 0.0);
}

TEST_CASE("per-kWh profile composes the four metrics") {
  SECTION("all intensities zero") {
    auto dc = make_dc();
    dc.area = 0.0;
    dc.annual_it_energy = 1.0;
    CHECK(per_kwh_profile(dc) == FootprintVector{});
  }
  SECTION("Iowa-style grid-only carbon") {
    auto dc = make_dc();
    dc.pue = 1.16;
    dc.p_onsite = 0.0;
    dc.region.ci_grid = 312.0;
    CHECK_THAT(per_kwh_profile(dc).carbon_g, WithinRel(1.16 * 312.0, 1e-12));
  }
  SECTION("components equal the single-metric operations at 1 kWh") {
    SplitMix64 rng(7);
    for (int i = 0; i < 200; ++i) {
      auto dc = random_dc(rng);
      FootprintVector p = per_kwh_profile(dc);
      CHECK(p.carbon_g == carbon_footprint(1.0, dc));
      CHECK(p.water_l == water_onsite(1.0, dc) + water_offsite(1.0, dc));
      CHECK(p.land_g == land_onsite(1.0, dc) + land_offsite(1.0, dc));
      CHECK(p.ewaste_g == ewaste_footprint(1.0, dc));
    }
  }
  SECTION("missing land data zeroes the on-site land term only") {
    SplitMix64 rng(8);
    auto dc = random_dc(rng);
    dc.area.reset();
    FootprintVector p = per_kwh_profile(dc);
    CHECK(p.land_g == land_offsite(1.0, dc));
  }
  SECTION("a present-but-zero annual energy still fails loudly") {
    SplitMix64 rng(9);
    auto dc = random_dc(rng);
    dc.annual_it_energy = 0.0;
    CHECK_THROWS_AS(per_kwh_profile(dc), Error);
  }
}

TEST_CASE("footprint operations are homogeneous of degree 1 in energy") {
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    auto dc = random_dc(rng);
    double e = rng.uniform(0.0, 50.0);
    // powers of two scale exactly in floating point
    double k = std::exp2(rng.uniform_int(-6, 6));
    CHECK(carbon_footprint(k * e, dc) == k * carbon_footprint(e, dc));
    CHECK(water_onsite(k * e, dc) == k * water_onsite(e, dc));
    CHECK(water_offsite(k * e, dc) == k * water_offsite(e, dc));
    CHECK(land_onsite(k * e, dc) == k * land_onsite(e, dc));
    CHECK(land_offsite(k * e, dc) == k * land_offsite(e, dc));
    CHECK(ewaste_footprint(k * e, dc) == k * ewaste_footprint(e, dc));
    // and arbitrary factors within rounding
    double a = rng.uniform(0.0, 9.0);
    CHECK_THAT(carbon_footprint(a * e, dc),
               Catch::Matchers::WithinRel(a * carbon_footprint(e, dc), 1e-12) ||
                   Catch::Matchers::WithinAbs(0.0, 1e-300));
  }
}

TEST_CASE("all outputs are non-negative on valid inputs") {
  SplitMix64 rng(123);
  for (int i = 0; i < 1000; ++i) {
    auto dc = random_dc(rng);
    double e = rng.uniform(0.0, 100.0);
    FootprintVector v = footprint_for_energy(e, dc);
    CHECK(v.carbon_g >= 0.0);
    CHECK(v.water_l >= 0.0);
    CHECK(v.land_g >= 0.0);
    CHECK(v.ewaste_g >= 0.0);
  }
}

TEST_CASE("footprint vectors add componentwise") {
  FootprintVector a{1, 2, 3, 4}, b{10, 20, 30, 40};
  CHECK(a + b == FootprintVector{11, 22, 33, 44});
  a += b;
  CHECK(a[Factor::kWater] == 22.0);
}

TEST_CASE("type invariants are enforced") {
  SECTION("job deployed flag must match d_prev") {
    Job j{"j1", "u", 1.0, 1, 0, true, std::nullopt};
    CHECK_THROWS_AS(j.validate(), Error);
    j.deployed = false;
    j.d_prev = "d1";
    CHECK_THROWS_AS(j.validate(), Error);
  }
  SECTION("job lifetime at least one hour") {
    Job j{"j1", "u", 1.0, 0, 0, false, std::nullopt};
    CHECK_THROWS_AS(j.validate(), Error);
  }
  SECTION("pue below one is rejected") {
    auto dc = make_dc();
    dc.pue = 0.99;
    CHECK_THROWS_AS(dc.validate(), Error);
  }
  SECTION("negative regional intensity is rejected") {
    RegionProfile r;
    r.ci_grid = -1.0;
    CHECK_THROWS_AS(r.validate(), Error);
  }
  SECTION("factor names round-trip") {
    for (int f = 0; f < kFactorCount; ++f) {
      auto fac = static_cast<Factor>(f);
      CHECK(factor_from_name(factor_name(fac)) == fac);
    }
    CHECK_THROWS_AS(factor_from_name("co2"), Error);
  }
}
