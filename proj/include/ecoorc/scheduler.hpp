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

#ifndef ECOORC_SCHEDULER_HPP_
#define ECOORC_SCHEDULER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ecoorc/footprint.hpp"
#include "ecoorc/mincostflow.hpp"

namespace ecoorc {

/// Preference weights over the impact factors; all non-negative, at least
/// one positive.
struct User {
  std::string user_id;
  std::array<double, kFactorCount> theta{};

  void validate() const {
    bool any = false;
    for (double w : theta) {
      if (w < 0.0) throw Error("user '" + user_id + "': negative preference weight");
      if (w > 0.0) any = true;
    }
    if (!any) throw Error("user '" + user_id + "': all-zero preference vector");
  }
};

/// One-hot preference vector for a single-factor baseline strategy.
inline std::array<double, kFactorCount> baseline_theta(Factor f) {
  std::array<double, kFactorCount> t{};
  t[static_cast<int>(f)] = 1.0;
  return t;
}

enum class CapacityMode {
  kConcurrent,  ///< a data center hosts at most s_max jobs in total
  kIncoming,    ///< only jobs arriving from elsewhere count against s_max
};

enum class Normalization { kMinMax, kNone };

enum class InfeasibilityPolicy { kDefer, kError };

struct SchedulerConfig {
  double alpha = 0.1;  ///< minimum relative improvement to justify a migration
  CapacityMode capacity_mode = CapacityMode::kConcurrent;
  bool migration_enabled = true;
  Normalization normalization = Normalization::kMinMax;
  InfeasibilityPolicy infeasibility_policy = InfeasibilityPolicy::kDefer;

  void validate() const {
    if (alpha < 0.0 || alpha >= 1.0) {
      throw Error("scheduler: alpha must be in [0, 1)");
    }
  }
};

/// Assignment of running jobs to data centers between rounds.
struct PlacementState {
  std::map<std::string, std::string> assignments;  // job_id -> dc_id

  std::map<std::string, int> occupancy() const {
    std::map<std::string, int> occ;
    for (const auto& [job, dc] : assignments) ++occ[dc];
    return occ;
  }
};

struct MigrationEvent {
  std::string job_id;
  std::string from_dc;
  std::string to_dc;
  double cost_before = 0.0;
  double cost_after = 0.0;
};

/// Outcome of one scheduling round.
struct RoundDecision {
  std::map<std::string, std::string> placements;  // job_id -> dc_id
  std::vector<MigrationEvent> migrations;
  std::vector<std::string> deferred;
  double objective_value = 0.0;
};

/// Rescales profiles so factors are commensurable before the preference
/// dot product. Min-max maps each factor to [0,1] across the fleet; a
/// factor with no spread maps to all zeros. kNone passes values through.
inline std::map<std::string, FootprintVector> normalize_profiles(
    const std::map<std::string, FootprintVector>& profiles, Normalization mode) {
  if (profiles.empty()) throw Error("normalize_profiles: no profiles");
  if (mode == Normalization::kNone) return profiles;
  FootprintVector lo, hi;
  bool first = true;
  for (const auto& [id, p] : profiles) {
    for (int f = 0; f < kFactorCount; ++f) {
      auto fac = static_cast<Factor>(f);
      if (first) {
        lo[fac] = hi[fac] = p[fac];
      } else {
        lo[fac] = std::min(lo[fac], p[fac]);
        hi[fac] = std::max(hi[fac], p[fac]);
      }
    }
    first = false;
  }
  std::map<std::string, FootprintVector> out;
  for (const auto& [id, p] : profiles) {
    FootprintVector n;
    for (int f = 0; f < kFactorCount; ++f) {
      auto fac = static_cast<Factor>(f);
      double span = hi[fac] - lo[fac];
      n[fac] = span > 0.0 ? (p[fac] - lo[fac]) / span : 0.0;
    }
    out[id] = n;
  }
  return out;
}

/// Deployment cost of placing `job` on `dc`: the preference-weighted sum
/// of the (normalized) per-kWh profile. Energy is intentionally not a
/// factor here; it scales a job's whole row and cannot change its argmin.
inline double cost(const Job& job, const DataCenterProfile& dc, const User& user,
                   const std::map<std::string, FootprintVector>& normalized_profiles) {
  if (user.user_id != job.owner) {
    throw Error("cost: user '" + user.user_id + "' does not own job '" +
                job.job_id + "'");
  }
  const FootprintVector& p = normalized_profiles.at(dc.dc_id);
  double c = 0.0;
  for (int f = 0; f < kFactorCount; ++f) {
    auto fac = static_cast<Factor>(f);
    c += p[fac] * user.theta[static_cast<int>(fac)];
  }
  return c;
}

namespace detail {

// Guards the migration-trigger denominator: a deployed job whose current
// cost is this small is treated as already optimal.
inline constexpr double kTriggerEps = 1e-9;

inline bool migration_candidate_ok(double cand_cost, double prev_cost, double alpha) {
  return cand_cost <= (1.0 - alpha) * prev_cost;
}

}  // namespace detail

/// Data centers `job` may be assigned to this round. New jobs may go
/// anywhere. A deployed job may stay put, and — when migration is on and
/// its current cost is meaningfully positive — move anywhere at least an
/// alpha-fraction cheaper.
inline std::set<std::string> feasible_dcs(
    const Job& job, const std::map<std::string, double>& costs,
    const PlacementState& state, const SchedulerConfig& cfg) {
  (void)state;
  std::set<std::string> out;
  if (!job.deployed) {
    for (const auto& [dc, c] : costs) out.insert(dc);
    return out;
  }
  const std::string& prev = *job.d_prev;
  auto it = costs.find(prev);
  if (it == costs.end()) {
    throw Error("job '" + job.job_id + "': previous data center '" + prev +
                "' is gone from the fleet");
  }
  out.insert(prev);
  double prev_cost = it->second;
  if (!cfg.migration_enabled || prev_cost <= detail::kTriggerEps) return out;
  for (const auto& [dc, c] : costs) {
    if (detail::migration_candidate_ok(c, prev_cost, cfg.alpha)) out.insert(dc);
  }
  return out;
}

namespace detail {

// A fully indexed round instance, shared by the flow solver and the
// brute-force oracle so both see identical costs, feasibility,
// quantization and deferrals.
struct RoundInstance {
  std::vector<Job> jobs;                       // sorted by job_id, post-deferral
  std::vector<const DataCenterProfile*> dcs;   // sorted by dc_id
  std::vector<std::string> deferred;           // job ids, deferral order
  std::vector<std::vector<double>> raw_cost;   // [job][dc]
  std::vector<std::vector<std::int64_t>> int_cost;
  std::vector<std::vector<char>> feasible;
  std::vector<int> own_dc;                     // dc index of d_prev or -1
};

// Costs are quantized onto an integer grid before the exact solve, so
// that optimality ties are discrete and the deterministic tie-break is
// meaningful. The grid step is a power of two picked from the largest
// cost; the induced objective error is far below the comparison
// tolerances used anywhere in the artifact.
inline double cost_quantum(double max_cost, std::size_t num_jobs) {
  double scale = std::exp2(40);
  if (max_cost > 0.0) {
    double limit = std::exp2(58) / max_cost / static_cast<double>(num_jobs + 2);
    scale = std::min(scale, limit);
  }
  return std::exp2(std::floor(std::log2(scale)));
}

inline RoundInstance build_instance(const std::vector<Job>& jobs,
                                    const std::vector<DataCenterProfile>& dcs,
                                    const std::map<std::string, User>& users,
                                    const PlacementState& state,
                                    const SchedulerConfig& cfg) {
  cfg.validate();
  if (dcs.empty()) throw Error("solve_round: empty fleet");

  RoundInstance inst;
  inst.dcs.reserve(dcs.size());
  for (const auto& dc : dcs) inst.dcs.push_back(&dc);
  std::sort(inst.dcs.begin(), inst.dcs.end(),
            [](const auto* a, const auto* b) { return a->dc_id < b->dc_id; });
  std::map<std::string, int> dc_index;
  for (std::size_t i = 0; i < inst.dcs.size(); ++i) {
    if (!dc_index.emplace(inst.dcs[i]->dc_id, static_cast<int>(i)).second) {
      throw Error("duplicate dc_id '" + inst.dcs[i]->dc_id + "'");
    }
  }

  std::vector<Job> sorted_jobs = jobs;
  std::sort(sorted_jobs.begin(), sorted_jobs.end(),
            [](const Job& a, const Job& b) { return a.job_id < b.job_id; });

  // Per-round profiles and costs.
  std::map<std::string, FootprintVector> profiles;
  for (const auto* dc : inst.dcs) profiles[dc->dc_id] = per_kwh_profile(*dc);
  auto normalized = normalize_profiles(profiles, cfg.normalization);

  long long total_capacity = 0;
  for (const auto* dc : inst.dcs) total_capacity += dc->s_max;

  // Validate deployed jobs against the fleet and the placement state.
  long long deployed_count = 0;
  std::map<std::string, int> deployed_per_dc;
  for (std::size_t i = 0; i + 1 < sorted_jobs.size(); ++i) {
    if (sorted_jobs[i].job_id == sorted_jobs[i + 1].job_id) {
      throw Error("duplicate job_id '" + sorted_jobs[i].job_id + "'");
    }
  }
  for (const auto& job : sorted_jobs) {
    job.validate();
    if (!users.count(job.owner)) {
      throw Error("job '" + job.job_id + "': unknown owner '" + job.owner + "'");
    }
    if (job.deployed) {
      ++deployed_count;
      if (!dc_index.count(*job.d_prev)) {
        throw Error("job '" + job.job_id + "': previous data center '" +
                    *job.d_prev + "' is gone from the fleet");
      }
      auto st = state.assignments.find(job.job_id);
      if (st == state.assignments.end() || st->second != *job.d_prev) {
        throw Error("job '" + job.job_id + "': placement state out of sync");
      }
      ++deployed_per_dc[*job.d_prev];
    }
  }
  if (cfg.capacity_mode == CapacityMode::kConcurrent) {
    for (const auto& [dc, n] : deployed_per_dc) {
      if (n > inst.dcs[dc_index[dc]]->s_max) {
        throw Error("data center '" + dc + "' holds " + std::to_string(n) +
                    " running jobs, above its capacity");
      }
    }
    if (deployed_count > total_capacity) {
      throw Error("running jobs exceed total fleet capacity; cannot defer a running job");
    }
  }

  // Deferral: when demand exceeds capacity, new jobs yield in reverse
  // arrival order (running jobs are never deferred).
  long long demand = cfg.capacity_mode == CapacityMode::kConcurrent
                         ? static_cast<long long>(sorted_jobs.size())
                         : static_cast<long long>(sorted_jobs.size()) - deployed_count;
  long long overflow = demand - total_capacity;
  std::set<std::string> defer_ids;
  if (overflow > 0) {
    if (cfg.infeasibility_policy == InfeasibilityPolicy::kError) {
      throw Error("round demand " + std::to_string(demand) +
                  " exceeds total capacity " + std::to_string(total_capacity));
    }
    std::vector<const Job*> new_jobs;
    for (const auto& job : sorted_jobs) {
      if (!job.deployed) new_jobs.push_back(&job);
    }
    std::sort(new_jobs.begin(), new_jobs.end(), [](const Job* a, const Job* b) {
      return std::tie(a->arrival_hour, a->job_id) < std::tie(b->arrival_hour, b->job_id);
    });
    for (long long i = 0; i < overflow; ++i) {
      const Job* victim = new_jobs[new_jobs.size() - 1 - static_cast<std::size_t>(i)];
      defer_ids.insert(victim->job_id);
      inst.deferred.push_back(victim->job_id);
    }
  }

  double max_cost = 0.0;
  for (const auto& job : sorted_jobs) {
    if (defer_ids.count(job.job_id)) continue;
    inst.jobs.push_back(job);
    const User& user = users.at(job.owner);
    user.validate();
    std::vector<double> row(inst.dcs.size());
    std::map<std::string, double> cost_by_id;
    for (std::size_t d = 0; d < inst.dcs.size(); ++d) {
      row[d] = cost(job, *inst.dcs[d], user, normalized);
      cost_by_id[inst.dcs[d]->dc_id] = row[d];
      max_cost = std::max(max_cost, row[d]);
    }
    auto allowed = feasible_dcs(job, cost_by_id, state, cfg);
    std::vector<char> feas(inst.dcs.size(), 0);
    for (std::size_t d = 0; d < inst.dcs.size(); ++d) {
      feas[d] = allowed.count(inst.dcs[d]->dc_id) ? 1 : 0;
    }
    inst.raw_cost.push_back(std::move(row));
    inst.feasible.push_back(std::move(feas));
    inst.own_dc.push_back(job.deployed ? dc_index[*job.d_prev] : -1);
  }

  double quantum = cost_quantum(max_cost, inst.jobs.size());
  inst.int_cost.resize(inst.jobs.size());
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    inst.int_cost[j].resize(inst.dcs.size());
    for (std::size_t d = 0; d < inst.dcs.size(); ++d) {
      inst.int_cost[j][d] = std::llround(inst.raw_cost[j][d] * quantum);
    }
  }
  return inst;
}

inline RoundDecision decision_from_assignment(const RoundInstance& inst,
                                              const std::vector<int>& assignment) {
  RoundDecision dec;
  dec.deferred = inst.deferred;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const Job& job = inst.jobs[j];
    int d = assignment[j];
    dec.placements[job.job_id] = inst.dcs[d]->dc_id;
    dec.objective_value += inst.raw_cost[j][d];
    if (job.deployed && d != inst.own_dc[j]) {
      dec.migrations.push_back({job.job_id, *job.d_prev, inst.dcs[d]->dc_id,
                                inst.raw_cost[j][static_cast<std::size_t>(inst.own_dc[j])],
                                inst.raw_cost[j][d]});
    }
  }
  return dec;
}

}  // namespace detail

/// Solves one round exactly: a cost-minimal assignment of every
/// (non-deferred) job to a feasible data center under the capacity rule.
/// Jobs are unit-sized, so the instance reduces to min-cost bipartite
/// assignment, solved by successive shortest paths. Among equal-cost
/// optima the lexicographically least assignment (by job_id, then dc_id)
/// is returned, found by rerouting along zero-reduced-cost residual
/// cycles — so results do not depend on heap tie order or platform.
inline RoundDecision solve_round(const std::vector<Job>& jobs,
                                 const std::vector<DataCenterProfile>& dcs,
                                 const std::map<std::string, User>& users,
                                 const PlacementState& state,
                                 const SchedulerConfig& cfg) {
  auto inst = detail::build_instance(jobs, dcs, users, state, cfg);
  const int num_jobs = static_cast<int>(inst.jobs.size());
  const int num_dcs = static_cast<int>(inst.dcs.size());
  if (num_jobs == 0) return detail::decision_from_assignment(inst, {});

  // Node layout: source, jobs, dcs, sink.
  const int source = 0;
  const int job0 = 1;
  const int dc0 = job0 + num_jobs;
  const int sink = dc0 + num_dcs;
  MinCostFlow flow(sink + 1);

  const bool incoming = cfg.capacity_mode == CapacityMode::kIncoming;
  std::vector<std::vector<int>> arc_of(static_cast<std::size_t>(num_jobs),
                                       std::vector<int>(num_dcs, -1));
  for (int j = 0; j < num_jobs; ++j) {
    flow.add_arc(source, job0 + j, 1, 0);
    for (int d = 0; d < num_dcs; ++d) {
      if (!inst.feasible[j][d]) continue;
      if (incoming && inst.own_dc[j] == d) {
        // Staying put does not consume incoming capacity: bypass the
        // capacity arc and deliver straight to the sink.
        arc_of[j][d] = flow.add_arc(job0 + j, sink, 1, inst.int_cost[j][d]);
      } else {
        arc_of[j][d] = flow.add_arc(job0 + j, dc0 + d, 1, inst.int_cost[j][d]);
      }
    }
  }
  for (int d = 0; d < num_dcs; ++d) {
    flow.add_arc(dc0 + d, sink, inst.dcs[d]->s_max, 0);
  }

  auto [sent, int_cost_total] = flow.solve(source, sink);
  (void)int_cost_total;
  if (sent != num_jobs) {
    // The deferral preprocessing sizes demand to capacity, and a running
    // job can always stay put, so an unsaturated flow means the inputs
    // violated a precondition we failed to catch.
    throw std::logic_error("solve_round: assignment flow did not saturate");
  }

  // Lexicographic refinement. For each job in id order, move it to the
  // least dc_id consistent with some optimal completion, then pin it.
  // An alternative optimum containing arc (j,d) exists iff that arc and
  // some residual path back from its head to j all carry zero reduced
  // cost; rerouting along such a cycle keeps the flow optimal.
  std::vector<int> assignment(static_cast<std::size_t>(num_jobs), -1);
  std::vector<char> coreach;
  for (int j = 0; j < num_jobs; ++j) {
    int current = -1;
    for (int d = 0; d < num_dcs; ++d) {
      int a = arc_of[j][d];
      if (a >= 0 && flow.flow(a) == 1) current = d;
    }
    if (current < 0) throw std::logic_error("solve_round: job lost its assignment");
    flow.zero_cost_coreachable(job0 + j, coreach);
    int chosen = current;
    for (int d = 0; d < current; ++d) {
      int a = arc_of[j][d];
      if (a < 0 || flow.residual(a) <= 0 || flow.reduced_cost(a) != 0) continue;
      int entry = flow.arc_to(a);
      if (!coreach[entry]) continue;
      // Apply the cycle: return path first (while the candidate arc is
      // still empty, so its reverse cannot short-circuit the search),
      // then the candidate arc itself.
      if (!flow.reroute_unit_zero_cost(entry, job0 + j)) {
        throw std::logic_error("solve_round: zero-cost reroute vanished");
      }
      flow.push_unit(a);
      chosen = d;
      break;
    }
    assignment[j] = chosen;
    flow.freeze_node(job0 + j);
  }
  return detail::decision_from_assignment(inst, assignment);
}

/// Exhaustive reference solver. Same deferral, feasibility, quantized
/// costs and tie-break rule as solve_round, by construction; guards
/// against instances beyond ~1e7 enumerations.
inline RoundDecision brute_force_round(const std::vector<Job>& jobs,
                                       const std::vector<DataCenterProfile>& dcs,
                                       const std::map<std::string, User>& users,
                                       const PlacementState& state,
                                       const SchedulerConfig& cfg) {
  auto inst = detail::build_instance(jobs, dcs, users, state, cfg);
  const std::size_t num_jobs = inst.jobs.size();
  const std::size_t num_dcs = inst.dcs.size();
  double combos = std::pow(static_cast<double>(num_dcs), static_cast<double>(num_jobs));
  if (combos > 1e7) {
    throw Error("brute_force_round: instance too large (" + std::to_string(num_dcs) +
                "^" + std::to_string(num_jobs) + " assignments)");
  }
  if (num_jobs == 0) return detail::decision_from_assignment(inst, {});

  const bool incoming = cfg.capacity_mode == CapacityMode::kIncoming;
  std::vector<int> used(num_dcs, 0);
  std::vector<int> pick(num_jobs, -1);
  std::vector<int> best;
  std::int64_t best_cost = 0;
  bool have_best = false;

  // Depth-first over jobs in id order, candidates in dc_id order: the
  // first minimum found is the lexicographically least one.
  auto consumes_capacity = [&](std::size_t j, std::size_t d) {
    return !(incoming && inst.own_dc[j] == static_cast<int>(d));
  };
  std::function<void(std::size_t, std::int64_t)> walk =
      [&](std::size_t j, std::int64_t acc) {
        if (have_best && acc >= best_cost) return;  // costs are non-negative
        if (j == num_jobs) {
          best = pick;
          best_cost = acc;
          have_best = true;
          return;
        }
        for (std::size_t d = 0; d < num_dcs; ++d) {
          if (!inst.feasible[j][d]) continue;
          bool counts = consumes_capacity(j, d);
          if (counts && used[d] >= inst.dcs[d]->s_max) continue;
          if (counts) ++used[d];
          pick[j] = static_cast<int>(d);
          walk(j + 1, acc + inst.int_cost[j][d]);
          pick[j] = -1;
          if (counts) --used[d];
        }
      };
  walk(0, 0);
  if (!have_best) {
    throw std::logic_error("brute_force_round: no feasible assignment found");
  }
  return detail::decision_from_assignment(inst, best);
}

}  // namespace ecoorc

#endif  // ECOORC_SCHEDULER_HPP_
