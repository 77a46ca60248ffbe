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

#include <cstdint>
#include <vector>

#include "sparsealloc/instance.hpp"
#include "sparsealloc/rng.hpp"

namespace sparsealloc {

/// Simulated message-round accounting for the phase-compressed run.
/// Each phase is charged one sampling round, ceil(log2 B) ball-doubling
/// rounds and one commit round; the B compressed local rounds are free.
struct MpcCostReport {
  std::int64_t mpc_rounds = 0;
  int phases = 0;
  std::int64_t max_ball_volume = 0;   // largest measured radius-B ball
  std::int64_t total_memory_words = 0;
  std::int64_t per_machine_bound = 0;  // floor(n^alpha)
};

struct MpcConfig {
  double epsilon = 0.1;   // in (0, 1/4]
  double alpha = 0.5;     // per-machine memory exponent, in (0, 1)
  int lambda_guess = 2;
  int B = 1;              // compressed rounds per phase
  std::int64_t t = 1;     // sample budget per (vertex, group, offset)
  int tau = 1;            // total rounds
  std::uint64_t seed = 0;

  /// Fills B, t and tau from the closed forms; throws InvalidConfig on
  /// out-of-range parameters.
  static MpcConfig make(const AllocationInstance& instance, double epsilon,
                        double alpha, int lambda_guess, std::uint64_t seed);
};

/// Rounds-per-phase budget: with eps' = epsilon/48,
///   B = max(1, floor(min(sqrt(alpha*log2(n)/(8*eps')),
///                        sqrt(log2(lambda)/(8*eps'))))).
int compute_B(int n, int lambda_guess, double epsilon, double alpha);

/// Sum estimator behind the per-group aggregation: exact when the list
/// fits in t, otherwise (len/t) times the sum of t uniform draws with
/// replacement.
double estimate_group_sum(const std::vector<double>& values, std::int64_t t,
                          Rng& rng);

/// Phase-local view: groups are frozen at phase start, reserved samples
/// are drawn up front per round offset, estimates evolve per compressed
/// round.
struct MpcPhaseState {
  std::vector<int> exponent;      // per right_index, beta_v = (1+eps)^exp
  std::vector<double> beta_left;  // per left vertex, current estimate
  std::vector<double> est_alloc;  // per right_index, last round's estimate
  int rounds_done = 0;
  int phase_index = 0;
  MpcCostReport cost;

  // Phase-frozen grouping. Keys are clamped to [-2*tau, 2*tau]. An edge
  // is "exact" for a side when its group there fits within t.
  struct SampledGroup {
    int vertex;                      // global id of the owning vertex
    int key;
    std::int64_t size = 0;           // full group size
    std::vector<std::vector<int>> samples;  // [offset] -> edge ids
  };
  std::vector<char> edge_exact_for_left;   // per edge
  std::vector<char> edge_exact_for_right;  // per edge
  std::vector<SampledGroup> left_groups;   // sampled groups of left owners
  std::vector<SampledGroup> right_groups;  // sampled groups of right owners
  bool all_exact = true;
};

/// Optional per-round recording: the estimate, the exact load recomputed
/// from the same exponents, and the decision taken.
struct MpcTrace {
  std::vector<std::vector<double>> est_alloc;    // [round][right_index]
  std::vector<std::vector<double>> exact_alloc;  // [round][right_index]
  std::vector<std::vector<signed char>> decision;
};

MpcPhaseState mpc_init(const AllocationInstance& instance,
                       const MpcConfig& config);

/// Executes one phase: rebuilds groups from the current estimates, draws
/// fresh reserved samples for each round offset, simulates up to B
/// compressed rounds, and updates the cost ledger (including a measured
/// radius-B ball volume on a 1% vertex sample of the phase's sampled
/// graph).
void run_mpc_phase(const AllocationInstance& instance, MpcPhaseState& state,
                   const MpcConfig& config, MpcTrace* trace = nullptr);

struct MpcRunResult {
  FractionalAllocation allocation;
  MpcCostReport cost;
  std::vector<int> final_exponent;
  std::vector<double> final_est_alloc;
  int rounds = 0;
};

/// Full run: ceil(tau/B) phases, then the per-edge emission
/// x = min(1, C_v/est_alloc_v) * beta_v/beta_u with exact final beta
/// values, followed by an exact per-vertex feasibility rescale.
MpcRunResult run_mpc(const AllocationInstance& instance,
                     const MpcConfig& config, MpcTrace* trace = nullptr);

MpcRunResult run_mpc(const AllocationInstance& instance, double epsilon,
                     double alpha, int lambda_guess, std::uint64_t seed,
                     MpcTrace* trace = nullptr);

struct MpcGuessResult {
  MpcRunResult run;
  int lambda_used = 0;
  bool guess_exhausted = false;  // fell back to lambda = n
};

/// Doubling loop over sqrt(log lambda): tries lambda_i = 2^(4^i) for
/// i = 1, 2, ... and keeps the first run whose termination test (on
/// exactly recomputed loads) passes; once lambda_i would exceed n it
/// falls back to lambda = n. Costs accumulate across trials, plus one
/// charged round per termination test.
MpcGuessResult run_mpc_with_guessing(const AllocationInstance& instance,
                                     double epsilon, double alpha,
                                     std::uint64_t seed,
                                     MpcTrace* trace = nullptr);

}  // namespace sparsealloc
