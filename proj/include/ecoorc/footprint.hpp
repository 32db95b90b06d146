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

#ifndef ECOORC_FOOTPRINT_HPP_
#define ECOORC_FOOTPRINT_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace ecoorc {

/// Domain error (bad input data, unresolved references, parse failures).
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The four environmental impact factors tracked per data center.
enum class Factor : int { kCarbon = 0, kWater = 1, kLand = 2, kEwaste = 3 };

inline constexpr int kFactorCount = 4;

inline constexpr std::array<const char*, kFactorCount> kFactorNames = {
    "carbon", "water", "land", "ewaste"};

inline const char* factor_name(Factor f) {
  return kFactorNames[static_cast<int>(f)];
}

/// Parses a factor name ("carbon", "water", "land", "ewaste").
inline Factor factor_from_name(const std::string& name) {
  for (int i = 0; i < kFactorCount; ++i) {
    if (name == kFactorNames[i]) return static_cast<Factor>(i);
  }
  throw Error("unknown factor name: '" + name + "'");
}

/// Regional environmental intensities. Either loaded directly or derived
/// from a power-source mix (see gridmix.hpp).
struct RegionProfile {
  std::string region_id;
  double ci_grid = 0.0;    ///< grid carbon intensity, gCO2/kWh
  double ewif_grid = 0.0;  ///< grid energy water intensity, l/kWh
  double elif_grid = 0.0;  ///< grid energy land intensity, m2/kWh
  double wsf = 0.0;        ///< water scarcity factor, dimensionless >= 0
  double cclf = 0.0;       ///< carbon capture loss, gCO2 per m2 per year

  /// Throws Error if any intensity is negative. wsf may exceed 1 for
  /// severely water-stressed regions.
  void validate() const {
    if (ci_grid < 0 || ewif_grid < 0 || elif_grid < 0 || wsf < 0 || cclf < 0) {
      throw Error("region '" + region_id + "': negative intensity field");
    }
  }
};

/// Per-facility parameters, reported or estimated. The land fields (area,
/// annual IT energy) are optional: facilities without published land data
/// participate with a zero on-site land component.
struct DataCenterProfile {
  std::string dc_id;
  RegionProfile region;       ///< regional parameters currently in effect
  double pue = 1.0;           ///< power usage effectiveness, >= 1
  double wue = 0.0;           ///< water usage effectiveness, l/kWh
  double p_onsite = 0.0;      ///< fraction of power from on-site plant, [0,1]
  double ci_onsite = 0.0;     ///< on-site plant carbon intensity, gCO2/kWh
  double ewif_onsite = 0.0;   ///< on-site plant water intensity, l/kWh
  std::optional<double> area;              ///< facility area, m2
  std::optional<double> annual_it_energy;  ///< annual IT energy, kWh
  double ewi = 0.0;           ///< e-waste intensity, g/kWh
  int s_max = 0;              ///< max jobs the facility may host

  /// Fraction of power drawn from the regional grid.
  double p_grid() const { return 1.0 - p_onsite; }

  /// True when both land fields are present, i.e. the on-site land term
  /// can be evaluated.
  bool has_land_data() const {
    return area.has_value() && annual_it_energy.has_value();
  }

  void validate() const {
    if (pue < 1.0) throw Error("dc '" + dc_id + "': pue must be >= 1");
    if (p_onsite < 0.0 || p_onsite > 1.0) {
      throw Error("dc '" + dc_id + "': p_onsite must be in [0,1]");
    }
    if (wue < 0 || ci_onsite < 0 || ewif_onsite < 0 || ewi < 0) {
      throw Error("dc '" + dc_id + "': negative intensity field");
    }
    if (area && *area < 0) throw Error("dc '" + dc_id + "': negative area");
    if (annual_it_energy && *annual_it_energy < 0) {
      throw Error("dc '" + dc_id + "': negative annual_it_energy");
    }
    if (s_max < 0) throw Error("dc '" + dc_id + "': s_max must be >= 0");
    region.validate();
  }
};

/// A workload unit. power_kw is the expected hourly power draw; a job that
/// is already running carries the data center it currently occupies.
struct Job {
  std::string job_id;
  std::string owner;
  double power_kw = 0.0;
  int lifetime_hours = 1;
  int arrival_hour = 0;
  bool deployed = false;
  std::optional<std::string> d_prev;

  void validate() const {
    if (deployed != d_prev.has_value()) {
      throw Error("job '" + job_id + "': deployed flag inconsistent with d_prev");
    }
    if (lifetime_hours < 1) {
      throw Error("job '" + job_id + "': lifetime_hours must be >= 1");
    }
  }
};

/// Impact totals, one component per factor. Componentwise additive across
/// jobs and rounds.
struct FootprintVector {
  double carbon_g = 0.0;
  double water_l = 0.0;
  double land_g = 0.0;   // grams of CO2 capture potential lost
  double ewaste_g = 0.0;

  double operator[](Factor f) const {
    switch (f) {
      case Factor::kCarbon: return carbon_g;
      case Factor::kWater: return water_l;
      case Factor::kLand: return land_g;
      case Factor::kEwaste: return ewaste_g;
    }
    return 0.0;
  }

  double& operator[](Factor f) {
    switch (f) {
      case Factor::kCarbon: return carbon_g;
      case Factor::kWater: return water_l;
      case Factor::kLand: return land_g;
      default: return ewaste_g;
    }
  }

  FootprintVector& operator+=(const FootprintVector& o) {
    carbon_g += o.carbon_g;
    water_l += o.water_l;
    land_g += o.land_g;
    ewaste_g += o.ewaste_g;
    return *this;
  }

  friend FootprintVector operator+(FootprintVector a, const FootprintVector& b) {
    a += b;
    return a;
  }

  friend bool operator==(const FootprintVector&, const FootprintVector&) = default;
};

/// Carbon emissions (grams CO2) for a job consuming e_kwh at dc:
///   (E * PUE) * (CI_onsite * P_onsite + CI_grid * P_grid)
inline double carbon_footprint(double e_kwh, const DataCenterProfile& dc) {
  return (e_kwh * dc.pue) *
         (dc.ci_onsite * dc.p_onsite + dc.region.ci_grid * dc.p_grid());
}

/// On-site water footprint (liters), including the on-site plant's share
/// and the regional scarcity multiplier:
///   E * (WUE + P_onsite * EWIF_onsite) * (1 + WSF)
/// With no on-site plant this degenerates to E * WUE * (1 + WSF).
inline double water_onsite(double e_kwh, const DataCenterProfile& dc) {
  return e_kwh * (dc.wue + dc.p_onsite * dc.ewif_onsite) * (1.0 + dc.region.wsf);
}

/// Off-site water footprint (liters) from grid generation:
///   (E * PUE) * (P_grid * EWIF_grid) * (1 + WSF)
inline double water_offsite(double e_kwh, const DataCenterProfile& dc) {
  return (e_kwh * dc.pue) * (dc.p_grid() * dc.region.ewif_grid) *
         (1.0 + dc.region.wsf);
}

/// Land-use effectiveness: facility area over annual IT energy, m2/kWh.
/// Requires both land fields; throws on a zero or missing annual energy.
inline double lue(const DataCenterProfile& dc) {
  if (!dc.area || !dc.annual_it_energy) {
    throw Error("dc '" + dc.dc_id + "': land fields missing, LUE undefined");
  }
  if (*dc.annual_it_energy <= 0.0) {
    throw Error("dc '" + dc.dc_id + "': annual_it_energy must be > 0 for LUE");
  }
  return *dc.area / *dc.annual_it_energy;
}

/// On-site land impact (grams CO2 capture loss): E * LUE * CCLF.
inline double land_onsite(double e_kwh, const DataCenterProfile& dc) {
  return e_kwh * lue(dc) * dc.region.cclf;
}

/// Off-site land impact from grid generation:
///   E * PUE * (P_grid * ELIF_grid * CCLF)
inline double land_offsite(double e_kwh, const DataCenterProfile& dc) {
  return e_kwh * dc.pue * (dc.p_grid() * dc.region.elif_grid * dc.region.cclf);
}

/// E-waste impact (grams): E * EWI.
inline double ewaste_footprint(double e_kwh, const DataCenterProfile& dc) {
  return e_kwh * dc.ewi;
}

/// Full impact vector for a job consuming e_kwh at dc. Water and land sum
/// their on-site and off-site parts. Facilities without land data
/// contribute a zero on-site land term instead of failing.
inline FootprintVector footprint_for_energy(double e_kwh,
                                            const DataCenterProfile& dc) {
  FootprintVector v;
  v.carbon_g = carbon_footprint(e_kwh, dc);
  v.water_l = water_onsite(e_kwh, dc) + water_offsite(e_kwh, dc);
  double on = dc.has_land_data() ? land_onsite(e_kwh, dc) : 0.0;
  v.land_g = on + land_offsite(e_kwh, dc);
  v.ewaste_g = ewaste_footprint(e_kwh, dc);
  return v;
}

/// Sustainability profile of a data center: its impact vector per kWh of
/// job energy.
inline FootprintVector per_kwh_profile(const DataCenterProfile& dc) {
  return footprint_for_energy(1.0, dc);
}

}  // namespace ecoorc

#endif  // ECOORC_FOOTPRINT_HPP_
