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

#ifndef ECOORC_SIMULATOR_HPP_
#define ECOORC_SIMULATOR_HPP_

#include <cstdint>
#include <cstdio>
#include <future>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ecoorc/footprint.hpp"
#include "ecoorc/gridmix.hpp"
#include "ecoorc/rng.hpp"
#include "ecoorc/scheduler.hpp"

namespace ecoorc {

/// How job costs are weighted: each user's own preference vector, or a
/// fleet-wide one-hot override on a single factor.
enum class Strategy { kPreference, kCarbon, kWater, kLand, kEwaste };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kPreference: return "preference";
    case Strategy::kCarbon: return "carbon";
    case Strategy::kWater: return "water";
    case Strategy::kLand: return "land";
    case Strategy::kEwaste: return "ewaste";
  }
  return "?";
}

inline Strategy strategy_from_name(const std::string& name) {
  for (Strategy s : {Strategy::kPreference, Strategy::kCarbon, Strategy::kWater,
                     Strategy::kLand, Strategy::kEwaste}) {
    if (name == strategy_name(s)) return s;
  }
  throw Error("unknown strategy '" + name + "'");
}

struct SimulationConfig {
  int horizon_hours = 72;      ///< number of scheduling rounds H
  int dt_hours = 1;            ///< hours covered by one round
  double lambda_per_hour = 10.0;
  double power_min_kw = 0.5;
  double power_max_kw = 10.0;
  int lifetime_min_h = 1;
  int lifetime_max_h = 5;
  std::uint64_t seed = 1;
  std::vector<User> users;
  Strategy strategy = Strategy::kPreference;
  std::int64_t start_utc = 0;  ///< epoch seconds of round 0 (for hourly mixes)

  void validate() const {
    if (horizon_hours < 1) throw Error("simulation: horizon_hours must be >= 1");
    if (dt_hours < 1) throw Error("simulation: dt_hours must be >= 1");
    if (lambda_per_hour < 0) throw Error("simulation: lambda_per_hour must be >= 0");
    if (power_min_kw > power_max_kw) throw Error("simulation: empty power range");
    if (lifetime_min_h > lifetime_max_h || lifetime_min_h < 1) {
      throw Error("simulation: bad lifetime range");
    }
    if (users.empty()) throw Error("simulation: at least one user required");
    for (const auto& u : users) u.validate();
  }
};

/// Supplies the regional parameters in effect at a given hour. Static
/// deployments return a fixed profile; mix-driven ones recompute from the
/// grid mix of that hour.
class RegionProvider {
 public:
  virtual ~RegionProvider() = default;
  virtual RegionProfile at(const std::string& region_id,
                           std::int64_t timestamp) const = 0;
};

class StaticRegionProvider : public RegionProvider {
 public:
  explicit StaticRegionProvider(std::map<std::string, RegionProfile> regions)
      : regions_(std::move(regions)) {}

  RegionProfile at(const std::string& region_id, std::int64_t) const override {
    auto it = regions_.find(region_id);
    if (it == regions_.end()) throw Error("unknown region '" + region_id + "'");
    return it->second;
  }

 private:
  std::map<std::string, RegionProfile> regions_;
};

/// Derives each region's intensities from its hourly power-source mix.
class MixRegionProvider : public RegionProvider {
 public:
  struct RegionalParams {
    double wsf = 0.0;
    double cclf = 0.0;
  };

  MixRegionProvider(std::shared_ptr<const MixBackend> backend, SourceFactors factors,
                    std::map<std::string, RegionalParams> params)
      : backend_(std::move(backend)),
        factors_(std::move(factors)),
        params_(std::move(params)) {}

  RegionProfile at(const std::string& region_id,
                   std::int64_t timestamp) const override {
    auto it = params_.find(region_id);
    if (it == params_.end()) {
      throw Error("no regional parameters (wsf/cclf) for '" + region_id + "'");
    }
    SourceMix mix = backend_->fetch(region_id, timestamp);
    return region_profile_from_mix(mix, factors_, it->second.wsf, it->second.cclf);
  }

 private:
  std::shared_ptr<const MixBackend> backend_;
  SourceFactors factors_;
  std::map<std::string, RegionalParams> params_;
};

struct RoundRecord {
  int t_hour = 0;  ///< hours since simulation start
  RoundDecision decision;
  std::map<std::string, FootprintVector> per_dc;
  FootprintVector total;
  int active_jobs = 0;
  int retired = 0;
  int admitted = 0;
  int migration_count = 0;
  int deferred_count = 0;
};

struct SimulationTrace {
  Strategy strategy = Strategy::kPreference;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
  FootprintVector cumulative;
};

/// Draws the full arrival schedule for a run. Four independent named
/// streams (arrival counts, powers, lifetimes, owners) derive from the
/// seed, so the schedule depends only on (seed, horizon, rates) and the
/// user list length.
inline std::vector<Job> generate_workload(const SimulationConfig& cfg) {
  cfg.validate();
  SplitMix64 arrivals = derive_stream(cfg.seed, "arrivals");
  SplitMix64 powers = derive_stream(cfg.seed, "powers");
  SplitMix64 lifetimes = derive_stream(cfg.seed, "lifetimes");
  SplitMix64 owners = derive_stream(cfg.seed, "owners");
  std::vector<Job> out;
  int seq = 0;
  for (int h = 0; h < cfg.horizon_hours; ++h) {
    int count = arrivals.poisson(cfg.lambda_per_hour);
    for (int k = 0; k < count; ++k) {
      Job j;
      char buf[16];
      std::snprintf(buf, sizeof buf, "j%06d", seq++);
      j.job_id = buf;
      j.power_kw = powers.uniform(cfg.power_min_kw, cfg.power_max_kw);
      j.lifetime_hours = lifetimes.uniform_int(cfg.lifetime_min_h, cfg.lifetime_max_h);
      j.owner = cfg.users[owners.index(cfg.users.size())].user_id;
      j.arrival_hour = h;
      out.push_back(std::move(j));
    }
  }
  return out;
}

namespace detail {

inline std::map<std::string, User> users_for_strategy(const SimulationConfig& cfg) {
  std::map<std::string, User> users;
  for (const auto& u : cfg.users) {
    User v = u;
    switch (cfg.strategy) {
      case Strategy::kPreference: break;
      case Strategy::kCarbon: v.theta = baseline_theta(Factor::kCarbon); break;
      case Strategy::kWater: v.theta = baseline_theta(Factor::kWater); break;
      case Strategy::kLand: v.theta = baseline_theta(Factor::kLand); break;
      case Strategy::kEwaste: v.theta = baseline_theta(Factor::kEwaste); break;
    }
    if (!users.emplace(v.user_id, std::move(v)).second) {
      throw Error("duplicate user_id '" + u.user_id + "'");
    }
  }
  return users;
}

}  // namespace detail

/// One full iterative-scheduling run over a fixed, pre-generated
/// workload. Per round: retire elapsed jobs, refresh profiles, admit the
/// round's arrivals behind any deferred carryovers, solve, apply the
/// placements, then account every running job's energy at its (possibly
/// new) data center.
inline SimulationTrace run_simulation_with_workload(
    const SimulationConfig& cfg, const std::vector<Job>& workload,
    const std::vector<DataCenterProfile>& dcs, const RegionProvider& regions,
    const SchedulerConfig& scheduler_cfg) {
  cfg.validate();
  scheduler_cfg.validate();
  auto users = detail::users_for_strategy(cfg);

  struct ActiveJob {
    Job job;
    int remaining_h = 0;
  };
  std::map<std::string, ActiveJob> active;
  std::vector<Job> waiting;  // deferred, re-queued ahead of new arrivals
  PlacementState state;

  std::map<int, std::vector<Job>> arrivals_by_hour;
  for (const auto& j : workload) arrivals_by_hour[j.arrival_hour].push_back(j);

  SimulationTrace trace;
  trace.strategy = cfg.strategy;
  trace.seed = cfg.seed;

  for (int round = 0; round < cfg.horizon_hours; ++round) {
    RoundRecord rec;
    rec.t_hour = round * cfg.dt_hours;
    std::int64_t ts = cfg.start_utc + static_cast<std::int64_t>(rec.t_hour) * 3600;

    // 1. Retire jobs whose lifetime has elapsed, freeing their slots.
    for (auto it = active.begin(); it != active.end();) {
      if (it->second.remaining_h <= 0) {
        state.assignments.erase(it->first);
        it = active.erase(it);
        ++rec.retired;
      } else {
        ++it;
      }
    }

    // 2. Refresh the fleet's sustainability profiles for this hour.
    std::vector<DataCenterProfile> fleet = dcs;
    std::map<std::string, const DataCenterProfile*> fleet_by_id;
    for (auto& dc : fleet) {
      dc.region = regions.at(dc.region.region_id, ts);
      fleet_by_id[dc.dc_id] = &dc;
    }

    // 3. Admit this round's arrivals behind deferred carryovers.
    std::vector<Job> queue = std::move(waiting);
    waiting.clear();
    for (int h = rec.t_hour; h < rec.t_hour + cfg.dt_hours; ++h) {
      auto it = arrivals_by_hour.find(h);
      if (it == arrivals_by_hour.end()) continue;
      for (const auto& j : it->second) queue.push_back(j);
    }
    rec.admitted = static_cast<int>(queue.size());

    // 4. Solve the round over running + queued jobs.
    std::vector<Job> round_jobs;
    round_jobs.reserve(active.size() + queue.size());
    for (const auto& [id, aj] : active) round_jobs.push_back(aj.job);
    for (const auto& j : queue) round_jobs.push_back(j);
    RoundDecision dec = solve_round(round_jobs, fleet, users, state, scheduler_cfg);

    // 5. Apply: placements become the new state; deferred jobs wait.
    state.assignments = dec.placements;
    for (auto& j : queue) {
      auto placed = dec.placements.find(j.job_id);
      if (placed != dec.placements.end()) {
        ActiveJob aj{j, j.lifetime_hours};
        active.emplace(j.job_id, std::move(aj));
      } else {
        waiting.push_back(j);
      }
    }
    for (auto& [id, aj] : active) {
      aj.job.deployed = true;
      aj.job.d_prev = dec.placements.at(id);
    }

    // 6. Account each running job's energy at its assigned data center.
    //    A migrated hour is charged wholly to the destination.
    for (const auto& [job_id, dc_id] : dec.placements) {
      ActiveJob& aj = active.at(job_id);
      int hours = std::min(cfg.dt_hours, aj.remaining_h);
      double e_kwh = aj.job.power_kw * hours;
      FootprintVector fp = footprint_for_energy(e_kwh, *fleet_by_id.at(dc_id));
      rec.per_dc[dc_id] += fp;
      rec.total += fp;
      aj.remaining_h -= hours;
    }

    rec.active_jobs = static_cast<int>(dec.placements.size());
    rec.migration_count = static_cast<int>(dec.migrations.size());
    rec.deferred_count = static_cast<int>(dec.deferred.size());
    trace.cumulative += rec.total;
    rec.decision = std::move(dec);
    trace.rounds.push_back(std::move(rec));
  }
  return trace;
}

inline SimulationTrace run_simulation(const SimulationConfig& cfg,
                                      const std::vector<DataCenterProfile>& dcs,
                                      const RegionProvider& regions,
                                      const SchedulerConfig& scheduler_cfg) {
  auto workload = generate_workload(cfg);
  return run_simulation_with_workload(cfg, workload, dcs, regions, scheduler_cfg);
}

/// Runs every strategy against the identical workload (generated once
/// from the shared seed). Strategy runs are independent and execute
/// concurrently; each owns its placement state.
inline std::map<Strategy, SimulationTrace> run_comparison(
    const SimulationConfig& cfg, const std::vector<DataCenterProfile>& dcs,
    const RegionProvider& regions, const SchedulerConfig& scheduler_cfg,
    const std::vector<Strategy>& strategies) {
  if (strategies.empty()) throw Error("run_comparison: no strategies given");
  auto workload = generate_workload(cfg);
  std::vector<std::pair<Strategy, std::future<SimulationTrace>>> futures;
  for (Strategy s : strategies) {
    SimulationConfig run_cfg = cfg;
    run_cfg.strategy = s;
    futures.emplace_back(
        s, std::async(std::launch::async, [run_cfg, &workload, &dcs, &regions,
                                           &scheduler_cfg]() {
          return run_simulation_with_workload(run_cfg, workload, dcs, regions,
                                              scheduler_cfg);
        }));
  }
  std::map<Strategy, SimulationTrace> out;
  for (auto& [s, fut] : futures) {
    try {
      out[s] = fut.get();
    } catch (const std::exception& e) {
      throw Error(std::string("strategy '") + strategy_name(s) + "': " + e.what());
    }
  }
  return out;
}

}  // namespace ecoorc

#endif  // ECOORC_SIMULATOR_HPP_
