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

#ifndef ECOORC_GRIDMIX_HPP_
#define ECOORC_GRIDMIX_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ecoorc/csv.hpp"
#include "ecoorc/footprint.hpp"
#include "ecoorc/rng.hpp"

namespace ecoorc {

/// A grid's power-source breakdown for one hour. Shares are fractions of
/// generated energy and must sum to 1.
struct SourceMix {
  std::string region_id;
  std::map<std::string, double> shares;

  void validate() const {
    double sum = 0.0;
    for (const auto& [name, share] : shares) {
      if (share < 0.0) {
        throw Error("mix for '" + region_id + "': negative share for '" + name + "'");
      }
      sum += share;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw Error("mix for '" + region_id + "': shares sum to " +
                  std::to_string(sum) + ", expected 1");
    }
  }
};

enum class IntensityKind { kCarbon, kWater, kLand };

/// Per-source intensity factors: carbon (gCO2/kWh), water (l/kWh) and
/// land (m2/kWh) per unit of electricity generated.
struct SourceFactors {
  struct Entry {
    double ci = 0.0;
    double water = 0.0;
    double land = 0.0;
  };
  std::map<std::string, Entry> by_source;
  std::optional<Entry> fallback;  ///< used for sources without an entry

  void validate() const {
    for (const auto& [name, e] : by_source) {
      if (e.ci < 0 || e.water < 0 || e.land < 0) {
        throw Error("source factors: negative factor for '" + name + "'");
      }
    }
  }

  static double pick(const Entry& e, IntensityKind k) {
    switch (k) {
      case IntensityKind::kCarbon: return e.ci;
      case IntensityKind::kWater: return e.water;
      case IntensityKind::kLand: return e.land;
    }
    return 0.0;
  }
};

/// Share-weighted average intensity of a mix. Sources absent from the
/// factor table use the declared fallback if any, otherwise the
/// share-weighted mean of the known sources in this same mix; with no
/// known source to average, the unknown source is an error.
inline double mix_to_intensity(const SourceMix& mix, const SourceFactors& factors,
                               IntensityKind kind) {
  mix.validate();
  double known_value = 0.0;
  double known_share = 0.0;
  std::vector<std::pair<std::string, double>> unknown;
  for (const auto& [name, share] : mix.shares) {
    auto it = factors.by_source.find(name);
    if (it != factors.by_source.end()) {
      known_value += share * SourceFactors::pick(it->second, kind);
      known_share += share;
    } else {
      unknown.emplace_back(name, share);
    }
  }
  double total = known_value;
  for (const auto& [name, share] : unknown) {
    if (factors.fallback) {
      total += share * SourceFactors::pick(*factors.fallback, kind);
    } else if (known_share > 0.0) {
      total += share * (known_value / known_share);
    } else {
      throw Error("unknown power source '" + name + "' and no factor to fall back on");
    }
  }
  return total;
}

/// Assembles a full RegionProfile from a mix plus the parameters that do
/// not derive from generation (water scarcity, capture loss).
inline RegionProfile region_profile_from_mix(const SourceMix& mix,
                                             const SourceFactors& factors,
                                             double wsf, double cclf) {
  RegionProfile r;
  r.region_id = mix.region_id;
  r.ci_grid = mix_to_intensity(mix, factors, IntensityKind::kCarbon);
  r.ewif_grid = mix_to_intensity(mix, factors, IntensityKind::kWater);
  r.elif_grid = mix_to_intensity(mix, factors, IntensityKind::kLand);
  r.wsf = wsf;
  r.cclf = cclf;
  r.validate();
  return r;
}

inline SourceFactors load_source_factors(const std::string& path) {
  auto t = csv::read_table(path);
  int c_src = t.column("source");
  int c_ci = t.column("ci_g_per_kwh");
  int c_w = t.column("water_l_per_kwh");
  int c_l = t.column("land_m2_per_kwh");
  SourceFactors f;
  for (const auto& row : t.rows) {
    SourceFactors::Entry e{csv::parse_double(row[c_ci], path),
                           csv::parse_double(row[c_w], path),
                           csv::parse_double(row[c_l], path)};
    f.by_source[row[c_src]] = e;
  }
  f.validate();
  return f;
}

/// Hourly grid-mix source. Implementations must be deterministic per
/// (region, hour) key and safe for concurrent reads once configured.
class MixBackend {
 public:
  virtual ~MixBackend() = default;
  /// Mix for the hour containing `timestamp` (epoch seconds, UTC).
  virtual SourceMix fetch(const std::string& region_id,
                          std::int64_t timestamp) const = 0;
};

/// Reads hourly mixes from a long-format CSV
/// (region_id,timestamp_utc,source,share). In repeat mode the first hour
/// on file for a region stands in for every requested hour, which turns a
/// single-row-per-source file into a static mix.
class FixtureMixBackend : public MixBackend {
 public:
  enum class Mode { kHourly, kRepeatFirst };

  explicit FixtureMixBackend(const std::string& path, Mode mode = Mode::kHourly)
      : mode_(mode) {
    auto t = csv::read_table(path);
    int c_region = t.column("region_id");
    int c_ts = t.column("timestamp_utc");
    int c_src = t.column("source");
    int c_share = t.column("share");
    for (const auto& row : t.rows) {
      std::int64_t ts = timeutil::parse_rfc3339(row[c_ts]);
      std::int64_t hour = ts - ts % 3600;
      auto& mix = mixes_[{row[c_region], hour}];
      mix.region_id = row[c_region];
      mix.shares[row[c_src]] += csv::parse_double(row[c_share], path);
    }
    for (const auto& [key, mix] : mixes_) {
      mix.validate();
      auto it = first_hour_.find(key.first);
      if (it == first_hour_.end() || key.second < it->second) {
        first_hour_[key.first] = key.second;
      }
    }
  }

  SourceMix fetch(const std::string& region_id,
                  std::int64_t timestamp) const override {
    auto fh = first_hour_.find(region_id);
    if (fh == first_hour_.end()) {
      throw Error("mix fixture: unknown region '" + region_id + "'");
    }
    std::int64_t hour = timestamp - timestamp % 3600;
    if (mode_ == Mode::kRepeatFirst) hour = fh->second;
    auto it = mixes_.find({region_id, hour});
    if (it == mixes_.end()) {
      std::int64_t lo = fh->second, hi = fh->second;
      for (const auto& [key, mix] : mixes_) {
        if (key.first != region_id) continue;
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
      }
      throw Error("mix fixture: no mix for region '" + region_id + "' at " +
                  timeutil::format_rfc3339(hour) + "; fixture covers " +
                  timeutil::format_rfc3339(lo) + " to " +
                  timeutil::format_rfc3339(hi));
    }
    return it->second;
  }

 private:
  Mode mode_;
  std::map<std::pair<std::string, std::int64_t>, SourceMix> mixes_;
  std::map<std::string, std::int64_t> first_hour_;
};

/// Transport used by RemoteMixBackend; the production implementation
/// performs an HTTP GET (see http_fetch.hpp), tests substitute a stub.
using HttpGetFn = std::function<std::string(const std::string& url)>;

/// Raised when the upstream request itself fails; distinct from a cache
/// miss, which is silent and simply triggers a fetch.
struct RemoteError : Error {
  explicit RemoteError(const std::string& what) : Error(what) {}
};

/// Fetches hourly mixes from a remote endpoint and caches every response
/// body on disk keyed by (region, hour), so repeated runs replay offline
/// and byte-identically. Cache files are named by the FNV-1a hash of the
/// request key. Response body format:
///   {"region": "...", "shares": {"coal": 0.1, ...}}
class RemoteMixBackend : public MixBackend {
 public:
  RemoteMixBackend(std::string base_url, std::filesystem::path cache_dir,
                   HttpGetFn get)
      : base_url_(std::move(base_url)),
        cache_dir_(std::move(cache_dir)),
        get_(std::move(get)) {
    std::filesystem::create_directories(cache_dir_);
  }

  SourceMix fetch(const std::string& region_id,
                  std::int64_t timestamp) const override {
    std::int64_t hour = timestamp - timestamp % 3600;
    std::string body = fetch_body(region_id, hour);
    return parse_body(body, region_id);
  }

  /// Raw response body for a key, from cache when present. Exposed so the
  /// replay behavior is directly testable.
  std::string fetch_body(const std::string& region_id, std::int64_t hour) const {
    auto path = cache_path(region_id, hour);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      std::ifstream in(path, std::ios::binary);
      if (in) {
        return std::string(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
      }
    }
    std::string url = base_url_ + "/mix?region=" + region_id +
                      "&hour=" + timeutil::format_rfc3339(hour);
    std::string body;
    try {
      body = get_(url);
    } catch (const std::exception& e) {
      throw RemoteError("remote mix fetch failed for " + url + ": " + e.what());
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.close();
    std::filesystem::rename(tmp, path);  // atomic publish per key
    return body;
  }

  std::filesystem::path cache_path(const std::string& region_id,
                                   std::int64_t hour) const {
    std::string key = region_id + "|" + timeutil::format_rfc3339(hour);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(key)));
    return cache_dir_ / (std::string(buf) + ".json");
  }

 private:
  static SourceMix parse_body(const std::string& body, const std::string& region_id);

  std::string base_url_;
  std::filesystem::path cache_dir_;
  HttpGetFn get_;
  mutable std::mutex mutex_;
};

}  // namespace ecoorc

// json.hpp is heavy; keep its inclusion at the tail of this header only
// for the remote payload parser.
#include "json.hpp"

namespace ecoorc {

inline SourceMix RemoteMixBackend::parse_body(const std::string& body,
                                              const std::string& region_id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const std::exception& e) {
    throw RemoteError("remote mix payload is not valid JSON: " +
                      std::string(e.what()));
  }
  SourceMix mix;
  mix.region_id = region_id;
  if (!j.contains("shares") || !j["shares"].is_object()) {
    throw RemoteError("remote mix payload missing 'shares' object");
  }
  for (auto it = j["shares"].begin(); it != j["shares"].end(); ++it) {
    mix.shares[it.key()] = it.value().get<double>();
  }
  mix.validate();
  return mix;
}

}  // namespace ecoorc

#endif  // ECOORC_GRIDMIX_HPP_
