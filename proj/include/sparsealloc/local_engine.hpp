/*
Copyright (c) 2026 The sparse-alloc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <vector>

#include "sparsealloc/instance.hpp"

namespace sparsealloc {

/// Per-vertex, per-round threshold widening factors. An empty table means
/// the uniform rule (factor 1 everywhere). With a table, entry
/// [round-1][right_index] widens that vertex's update thresholds to
/// capacity/(1+k*eps) and capacity*(1+k*eps).
struct ThresholdSchedule {
  std::vector<std::vector<double>> k;  // [round-1][right_index]
  double k_max = 1.0;

  bool uniform() const { return k.empty(); }
  double at(int round, int right_index) const {
    return uniform() ? 1.0 : k[round - 1][right_index];
  }

  static ThresholdSchedule make_uniform() { return {}; }
  static ThresholdSchedule per_vertex_round(
      std::vector<std::vector<double>> table, double k_max);
};

struct EngineConfig {
  double epsilon = 0.1;  // in (0, 1]
  int tau = 1;           // round budget, >= 1
  ThresholdSchedule schedule;

  /// Throws InvalidConfig unless epsilon is in (0,1], tau >= 1, every
  /// schedule entry lies in [1/k_max, k_max], the table (if any) covers
  /// tau rounds, and epsilon <= 1/k_max whenever any entry differs
  /// from 1.
  void validate(const AllocationInstance& instance) const;
};

/// Live state of the priority iteration. Priorities are kept as integer
/// exponents: beta_v = (1+eps)^exponent exactly, so no drift accumulates
/// across rounds. `alloc` and `x_cache` hold the values of the last
/// completed round, computed before that round's exponent update.
struct PriorityState {
  std::vector<int> exponent;   // per right_index
  int round = 0;               // completed rounds
  std::vector<double> alloc;   // per right_index
  std::vector<double> x_cache; // per edge id
};

/// One CSV row per round when tracing is requested.
struct RoundTraceRow {
  int round = 0;
  int num_increased = 0;
  int num_decreased = 0;
  double match_weight = 0.0;
  int top_size = 0;
  int bottom_size = 0;
  int top_nbhd_size = 0;
};

/// Decisions per round (one of +1/0/-1 per right vertex), recorded when a
/// caller wants to compare trajectories.
struct DecisionTrace {
  std::vector<std::vector<signed char>> per_round;
};

/// Partition of R by exponent after `round` completed rounds. Levels are
/// indexed by exponent offset: levels[j] holds the vertices with exponent
/// j - round, for j in 0..2*round. Vertex ids are global.
struct LevelSetView {
  int round = 0;
  std::vector<std::vector<int>> levels;
  std::vector<int> top;                // exponent == +round
  std::vector<int> bottom;             // exponent == -round
  std::vector<int> top_neighborhood;   // left ids adjacent to `top`
};

/// Proportional fractions and loads for the given exponents: for every
/// left vertex u, x_e = beta_v / sum of beta over u's neighbors (edges of
/// isolated left vertices keep x = 0); alloc_v sums the incoming x.
/// Denominators and loads are compensated sums in ascending vertex-id
/// order. Shared by the local and sampled engines so equal exponents give
/// bitwise equal results.
void compute_proportional(const AllocationInstance& instance,
                          const std::vector<int>& exponent, double epsilon,
                          std::vector<double>& x_out,
                          std::vector<double>& alloc_out,
                          std::vector<double>* left_beta_out = nullptr);

PriorityState init_state(const AllocationInstance& instance);

/// Runs one round: computes x/alloc from the current exponents, stores
/// them in the state, then steps each exponent by the inclusive threshold
/// rule (ties update). Returns (num_increased, num_decreased).
std::pair<int, int> advance_round(const AllocationInstance& instance,
                                  PriorityState& state, double epsilon,
                                  const ThresholdSchedule& schedule);

/// Runs config.tau rounds from a fresh state.
PriorityState run_rounds(const AllocationInstance& instance,
                         const EngineConfig& config,
                         std::vector<RoundTraceRow>* trace = nullptr,
                         DecisionTrace* decisions = nullptr);

/// Rescales over-allocated right vertices: x' = (C_v/alloc_v) * x when
/// alloc_v > C_v, else x' = x. The weight equals
/// sum over v of min(C_v, alloc_v).
FractionalAllocation finalize(const AllocationInstance& instance,
                              const PriorityState& state);

LevelSetView level_sets(const AllocationInstance& instance,
                        const PriorityState& state);

/// sum over v of min(C_v, alloc_v) for the state's last completed round.
double match_weight(const AllocationInstance& instance,
                    const PriorityState& state);

/// True iff |N(top)| <= |bottom| or the total load outside the bottom
/// level reaches (1 - eps/2) * |N(top)|. Sound to act on after any
/// completed round.
bool termination_check(const AllocationInstance& instance,
                       const PriorityState& state, double epsilon);

struct AutoTerminationResult {
  PriorityState state;
  FractionalAllocation allocation;
  int rounds_used = 0;
  bool budget_exhausted = false;
};

/// Uniform-rule rounds with the termination test after each; finalizes on
/// trigger or on budget exhaustion (flagged, not fatal).
AutoTerminationResult run_until_terminated(
    const AllocationInstance& instance, double epsilon, int max_rounds,
    std::vector<RoundTraceRow>* trace = nullptr);

/// ceil(log_{1+eps}(4*lambda/eps)) + 1, the round budget that certifies
/// the constant-factor guarantee for arboricity <= lambda.
int default_tau(double epsilon, int lambda);

}  // namespace sparsealloc
