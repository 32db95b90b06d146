#!/usr/bin/env python3
# Copyright 2026 The ecoorc Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled fixture datasets under data/.

The reported tables under data/reported/ are the inputs; everything else
is derived from them with the estimation steps documented in the README:

  * Meta annual IT energy = facility consumption / 1.08 (global PUE).
  * Meta WUE              = water withdrawal / annual IT energy.
  * Google annual IT energy = 876,000 MWh (hyperscale floor estimate);
    Google WUE = water withdrawal / annual IT energy.
  * Azure annual IT energy = 876,000 MWh; WUE as reported.
  * Fleet selection: the 13 Meta, 7 Google and 4 Azure facilities with
    complete land data (US sites for Google/Azure).

Regional mixes, source factors, scarcity/capture-loss parameters, e-waste
intensities and weather series are synthetic but plausibly shaped; they
are NOT measurements. Deterministic by construction (fixed seed).
"""

import csv
import math
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")
START_HOUR = "2025-05-12T{:02d}:00:00Z"
START_EPOCH_DAYS = ["2025-05-12", "2025-05-13", "2025-05-14", "2025-05-15"]
HOURS = 73  # one spare hour beyond the 72-round horizon

GOOGLE_AZURE_IT_KWH = 876_000_000.0  # 100 MW floor * 8760 h
META_GLOBAL_PUE = 1.08

rng = random.Random(20250512)


def write_csv(relpath, header, rows):
    path = os.path.join(DATA, relpath)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        w.writerows(rows)
    print("wrote", os.path.relpath(path, DATA), f"({len(rows)} rows)")


def sig6(x):
    if x == 0:
        return "0"
    return f"{x:.6g}"


# ---------------------------------------------------------------- reported
# Verbatim reported values. Empty string = not published.
AZURE = [  # location, pue, wue l/kWh, land m2
    ("arizona", 1.223, 2.24, 22730),
    ("illinois", 1.346, 0.79, 65032),
    ("iowa", 1.16, 0.19, 37904),
    ("texas", 1.307, 1.82, 43664),
    ("washington", 1.156, 1.09, 74322),
    ("wyoming", 1.125, 0.23, ""),
    ("ireland", 1.197, 0.03, 28149),
    ("italy", 1.12, 0.023, ""),
    ("netherlands", 1.158, 0.08, ""),
    ("sweden", 1.172, 0.16, ""),
    ("singapore", 1.358, 2.06, 32516),
]
GOOGLE = [  # location, pue, water withdrawal Ml, land m2
    ("alabama", 1.1, 604.91, 25084),
    ("georgia", 1.09, 1585.33, 120774),
    ("nebraska", 1.09, 621.56, ""),
    ("nevada_henderson", 1.08, 1036.45, 6968),
    ("nevada_storey", 1.19, 7.19, ""),
    ("north_carolina", 1.09, 1355.56, 31308),
    ("ohio", 1.1, 575.38, 25548),
    ("oklahoma", 1.1, 3925.85, 130064),
    ("oregon", 1.07, 726.23, ""),
    ("texas", 1.13, 621.94, 74322),
    ("south_carolina", 1.1, 3206.99, ""),
    ("tennessee", 1.1, 1294.61, ""),
    ("chile", 1.09, 721.88, ""),
    ("belgium", 1.09, 1320.73, 83613),
    ("denmark", 1.1, 102.21, 13471),
    ("finland", 1.09, 11.36, 16000),
    ("ireland", 1.08, 2.27, 28800),
    ("netherlands", 1.08, 1121.99, ""),
]
AWS = [  # location, pue, land m2 (global WUE 0.18)
    ("canada", 1.22, ""),
    ("california", 1.17, 3326),
    ("northern_virginia", 1.15, ""),
    ("ohio", 1.12, 102007),
    ("oregon", 1.13, ""),
    ("brasil", 1.18, ""),
    ("ireland", 1.1, 2159),
    ("sweden", 1.12, 13471),
    ("germany", 1.33, ""),
    ("spain", 1.11, ""),
    ("south_africa", 1.24, ""),
    ("bahrain", 1.32, ""),
    ("uae", 1.36, ""),
    ("india_hyderabad", 1.5, ""),
    ("india_mumbai", 1.44, ""),
    ("china", 1.26, ""),
    ("singapore", 1.3, ""),
    ("indonesia", 1.35, ""),
    ("japan", 1.32, ""),
    ("australia_melbourne", 1.08, ""),
    ("australia_sydney", 1.15, 21367.69),
]
META = [  # location, facility consumption MWh, water withdrawal Ml, land m2
    ("alabama", 614198, 152, 90116),
    ("georgia", 968565, 61, ""),
    ("illinois", 138965, 55, ""),
    ("iowa", 1243306, 173, 133780),
    ("nebraska", 1148091, 123, 2415478),
    ("new_mexico", 1110100, 283, 37161),
    ("north_carolina", 507068, 55, 68748),
    ("ohio", 793063, 72, 55742),
    ("oregon", 1375321, 180, 297290),
    ("tennessee", 116520, 3, ""),
    ("texas", 1029570, 404, 2043866),
    ("utah", 787740, 87, 90116),
    ("virginia", 805061, 42, 41806),
    ("denmark", 518005, 371, 25084),
    ("ireland", 953837, 659, 86000),
    ("sweden", 351931, 50, 92903),
]

write_csv("reported/azure.csv", ["location", "pue", "wue_l_per_kwh", "land_m2"], AZURE)
write_csv("reported/google.csv", ["location", "pue", "h2o_withdrawal_ml", "land_m2"], GOOGLE)
write_csv("reported/aws.csv", ["location", "pue", "land_m2"], AWS)
write_csv("reported/meta.csv",
          ["location", "facility_consumption_mwh", "h2o_withdrawal_ml", "land_m2"], META)

# ------------------------------------------------------------------ regions
REGION_OF = {
    "alabama": "US-AL", "iowa": "US-IA", "nebraska": "US-NE",
    "new_mexico": "US-NM", "north_carolina": "US-NC", "ohio": "US-OH",
    "oregon": "US-OR", "texas": "US-TX", "utah": "US-UT",
    "virginia": "US-VA", "denmark": "DK", "ireland": "IE", "sweden": "SE",
    "georgia": "US-GA", "nevada_henderson": "US-NV", "oklahoma": "US-OK",
    "arizona": "US-AZ", "washington": "US-WA",
}

# base power-source mixes (synthetic, shaped after typical state grids)
MIX = {
    "US-AL": dict(coal=0.18, gas=0.40, nuclear=0.30, hydro=0.06, solar=0.03, wind=0.03),
    "US-IA": dict(wind=0.62, coal=0.20, gas=0.12, solar=0.03, hydro=0.03),
    "US-NE": dict(coal=0.48, wind=0.30, nuclear=0.14, gas=0.05, hydro=0.03),
    "US-NM": dict(gas=0.35, coal=0.25, wind=0.28, solar=0.12),
    "US-NC": dict(nuclear=0.33, gas=0.38, coal=0.12, solar=0.09, hydro=0.08),
    "US-OH": dict(gas=0.48, coal=0.36, nuclear=0.12, wind=0.03, solar=0.01),
    "US-OR": dict(hydro=0.52, gas=0.28, wind=0.12, solar=0.04, coal=0.04),
    "US-TX": dict(gas=0.44, wind=0.24, coal=0.14, nuclear=0.08, solar=0.10),
    "US-UT": dict(coal=0.52, gas=0.28, solar=0.12, wind=0.06, hydro=0.02),
    "US-VA": dict(gas=0.56, nuclear=0.30, coal=0.04, solar=0.06, biomass=0.04),
    "US-GA": dict(gas=0.42, nuclear=0.28, coal=0.14, solar=0.10, hydro=0.06),
    "US-NV": dict(gas=0.58, solar=0.28, geothermal=0.10, hydro=0.04),
    "US-OK": dict(gas=0.42, wind=0.44, coal=0.08, hydro=0.06),
    "US-AZ": dict(gas=0.40, nuclear=0.28, solar=0.20, coal=0.08, hydro=0.04),
    "US-WA": dict(hydro=0.62, gas=0.14, nuclear=0.10, wind=0.10, solar=0.04),
    "DK": dict(wind=0.56, biomass=0.18, coal=0.10, gas=0.10, solar=0.06),
    "IE": dict(gas=0.46, wind=0.36, coal=0.06, hydro=0.04, oil=0.04, solar=0.04),
    "SE": dict(hydro=0.40, nuclear=0.30, wind=0.20, biomass=0.08, gas=0.02),
}

WSF = {
    "US-AL": 0.20, "US-IA": 0.30, "US-NE": 0.55, "US-NM": 0.80, "US-NC": 0.22,
    "US-OH": 0.18, "US-OR": 0.15, "US-TX": 0.45, "US-UT": 0.90, "US-VA": 0.20,
    "US-GA": 0.25, "US-NV": 1.10, "US-OK": 0.40, "US-AZ": 1.30, "US-WA": 0.12,
    "DK": 0.35, "IE": 0.05, "SE": 0.02,
}
CCLF = {
    "US-AL": 850, "US-IA": 400, "US-NE": 350, "US-NM": 150, "US-NC": 900,
    "US-OH": 600, "US-OR": 950, "US-TX": 300, "US-UT": 200, "US-VA": 850,
    "US-GA": 880, "US-NV": 100, "US-OK": 320, "US-AZ": 120, "US-WA": 980,
    "DK": 550, "IE": 700, "SE": 750,
}

write_csv("regional.csv", ["region_id", "wsf", "cclf_g_per_m2_yr"],
          [(r, WSF[r], CCLF[r]) for r in sorted(MIX)])

# per-source intensity factors (synthetic, lifecycle-flavored magnitudes)
FACTORS = [
    # source, ci gCO2/kWh, water l/kWh, land m2/kWh
    ("coal", 820, 1.9, 1.5e-5),
    ("gas", 490, 0.75, 1.0e-6),
    ("oil", 720, 1.7, 1.2e-5),
    ("nuclear", 12, 2.3, 3.0e-7),
    ("wind", 11, 0.005, 2.0e-6),
    ("solar", 45, 0.33, 2.0e-5),
    ("hydro", 24, 5.4, 3.3e-5),
    ("biomass", 230, 2.2, 5.0e-4),
    ("geothermal", 38, 1.4, 2.5e-6),
]
write_csv("source_factors.csv",
          ["source", "ci_g_per_kwh", "water_l_per_kwh", "land_m2_per_kwh"], FACTORS)


def hour_ts(h):
    return f"{START_EPOCH_DAYS[h // 24]}T{h % 24:02d}:00:00Z"


def hourly_shares(region, h):
    """Diurnal wobble: solar follows daylight, wind drifts on a 24 h cycle;
    the region's largest dispatchable source absorbs the residual."""
    base = MIX[region]
    phase = sum(map(ord, region)) % 24
    dispatchable = max(
        (s for s in base if s in ("gas", "coal", "hydro", "nuclear")),
        key=lambda s: base[s])
    shares = {}
    for s, v in base.items():
        if s == dispatchable:
            continue
        if s == "solar":
            day = max(0.0, math.sin(math.pi * ((h % 24) - 5.5) / 13.0))
            shares[s] = v * (0.05 + 1.55 * day)
        elif s == "wind":
            shares[s] = v * (1.0 + 0.30 * math.sin(2 * math.pi * (h + phase) / 24.0))
        else:
            shares[s] = v
    rest = 1.0 - sum(shares.values())
    if rest < 0.01:
        scale = (1.0 - 0.01) / sum(shares.values())
        shares = {s: v * scale for s, v in shares.items()}
        rest = 0.01
    shares[dispatchable] = rest
    # fix rounding so the printed shares sum to exactly 1.000000
    rounded = {s: round(v, 6) for s, v in shares.items()}
    drift = round(1.0 - sum(rounded.values()), 6)
    rounded[dispatchable] = round(rounded[dispatchable] + drift, 6)
    return rounded


rows_static, rows_hourly = [], []
for region in sorted(MIX):
    for s, v in sorted(hourly_shares(region, 0).items()):
        rows_static.append((region, hour_ts(0), s, f"{v:.6f}"))
    for h in range(HOURS):
        for s, v in sorted(hourly_shares(region, h).items()):
            rows_hourly.append((region, hour_ts(h), s, f"{v:.6f}"))
write_csv("mixes_static.csv", ["region_id", "timestamp_utc", "source", "share"],
          rows_static)
write_csv("mixes_hourly_72h.csv", ["region_id", "timestamp_utc", "source", "share"],
          rows_hourly)

# ------------------------------------------------------------------- fleets
def ewi_for(dc_id):
    # synthetic e-waste intensity, 0.008..0.05 g/kWh
    return round(rng.uniform(0.008, 0.05), 4)


def meta_fleet():
    rows = []
    for loc, fac_mwh, h2o_ml, land in META:
        if land == "":
            continue  # the 13 facilities with complete land data
        it_kwh = fac_mwh * 1000.0 / META_GLOBAL_PUE
        wue = h2o_ml * 1e6 / it_kwh
        rows.append((f"meta_{loc}", REGION_OF[loc], META_GLOBAL_PUE, sig6(wue),
                     0, 0, 0, land, round(it_kwh), ewi_for(f"meta_{loc}"), 5))
    return rows


def google_fleet():
    picks = ["alabama", "georgia", "nevada_henderson", "north_carolina",
             "ohio", "oklahoma", "texas"]  # the 7 US sites with land data
    rows = []
    for loc, pue, h2o_ml, land in GOOGLE:
        if loc not in picks:
            continue
        wue = h2o_ml * 1e6 / GOOGLE_AZURE_IT_KWH
        dc = f"google_{loc.replace('_henderson', '')}"
        rows.append((dc, REGION_OF[loc], pue, sig6(wue), 0, 0, 0, land,
                     round(GOOGLE_AZURE_IT_KWH), ewi_for(dc), 5))
    return rows


def azure_fleet():
    picks = ["arizona", "iowa", "texas", "washington"]  # 4 US sites with land data
    rows = []
    for loc, pue, wue, land in AZURE:
        if loc not in picks:
            continue
        dc = f"azure_{loc}"
        rows.append((dc, REGION_OF[loc], pue, wue, 0, 0, 0, land,
                     round(GOOGLE_AZURE_IT_KWH), ewi_for(dc), 5))
    return rows


FLEET_HEADER = ["dc_id", "region_id", "pue", "wue_l_per_kwh", "p_onsite",
                "ci_onsite_g_per_kwh", "ewif_onsite_l_per_kwh", "area_m2",
                "annual_it_energy_kwh", "ewi_g_per_kwh", "s_max"]
meta_rows = meta_fleet()
cloud_rows = meta_rows + google_fleet() + azure_fleet()
assert len(meta_rows) == 13, len(meta_rows)
assert len(cloud_rows) == 24, len(cloud_rows)
write_csv("fleet_meta.csv", FLEET_HEADER, meta_rows)
write_csv("fleet_cloud.csv", FLEET_HEADER, cloud_rows)

# ------------------------------------------------------------------ weather
def diurnal_weather(hours, t_mean, t_amp, spread_mean, spread_amp):
    rows = []
    for h in range(hours):
        t = t_mean + t_amp * math.sin(2 * math.pi * (h - 14) / 24.0) \
            + 0.8 * math.sin(2 * math.pi * h / 41.0)
        spread = max(0.5, spread_mean + spread_amp * math.sin(2 * math.pi * (h - 2) / 24.0))
        rows.append((hour_ts(h), f"{t:.2f}", f"{t - spread:.2f}"))
    return rows


write_csv("weather_72h.csv", ["timestamp_utc", "temp_c", "dewpoint_c"],
          diurnal_weather(72, 22.0, 6.0, 5.0, 3.0))


def stull_c(t, rh):
    return (t * math.atan(0.151977 * math.sqrt(rh + 8.313659)) + math.atan(t + rh)
            - math.atan(rh - 1.676331) + 0.00391838 * rh ** 1.5
            * math.atan(0.023101 * rh) - 4.686035)


def magnus_dewpoint(t, rh):
    a, b = 17.625, 243.04
    g = math.log(rh / 100.0) + a * t / (b + t)
    return b * g / (a - g)


def dewpoint_for_wet_bulb_f(temp_c, target_f):
    target_c = (target_f - 32.0) * 5.0 / 9.0
    lo, hi = 1.0, 100.0  # bisection over RH
    for _ in range(60):
        mid = (lo + hi) / 2.0
        if stull_c(temp_c, mid) < target_c:
            lo = mid
        else:
            hi = mid
    return magnus_dewpoint(temp_c, (lo + hi) / 2.0)


temp_c = 17.0
dew_c = dewpoint_for_wet_bulb_f(temp_c, 59.0)
write_csv("weather_constant_59f.csv", ["timestamp_utc", "temp_c", "dewpoint_c"],
          [(hour_ts(h), f"{temp_c:.6f}", f"{dew_c:.6f}") for h in range(72)])

# ---------------------------------------------------------------- scenarios
import json

USERS = [
    {"user_id": "u_green", "theta": {"carbon": 0.55, "water": 0.15, "land": 0.15, "ewaste": 0.15}},
    {"user_id": "u_water", "theta": {"carbon": 0.15, "water": 0.55, "land": 0.15, "ewaste": 0.15}},
    {"user_id": "u_balanced", "theta": {"carbon": 0.25, "water": 0.25, "land": 0.25, "ewaste": 0.25}},
]


def scenario(name, fleet_csv, mode):
    return {
        "name": name,
        "start_utc": "2025-05-12T00:00:00Z",
        "fleet": fleet_csv,
        "regions": {
            "mix": {
                "mixes": "mixes_hourly_72h.csv" if mode == "hourly" else "mixes_static.csv",
                "factors": "source_factors.csv",
                "regional": "regional.csv",
                "mode": mode,
            }
        },
        "users": USERS,
        "simulation": {
            "horizon_hours": 72,
            "dt_hours": 1,
            "lambda_per_hour": 10,
            "power_range_kw": [0.5, 10],
            "lifetime_range_h": [1, 5],
            "seed": 1,
        },
        "scheduler": {
            "alpha": 0.1,
            "capacity_mode": "concurrent",
            "migration": True,
            "normalization": "minmax",
            "infeasibility": "defer",
        },
        "output_dir": "out",
    }


for name, fleet_csv, mode in [
    ("meta", "fleet_meta.csv", "hourly"),
    ("cloud", "fleet_cloud.csv", "hourly"),
    ("meta_static", "fleet_meta.csv", "static"),
]:
    path = os.path.join(DATA, f"scenario_{name}.json")
    with open(path, "w") as f:
        json.dump(scenario(name, fleet_csv, mode), f, indent=2)
        f.write("\n")
    print("wrote", os.path.relpath(path, DATA))

print("done")
