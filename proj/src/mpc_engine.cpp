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
#include "sparsealloc/mpc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sparsealloc/errors.hpp"
#include "sparsealloc/local_engine.hpp"
#include "sparsealloc/numeric.hpp"

namespace sparsealloc {

int compute_B(int n, int lambda_guess, double epsilon, double alpha) {
  if (n < 2) throw InvalidConfig("n must be >= 2");
  if (lambda_guess < 2) throw InvalidConfig("lambda_guess must be >= 2");
  if (!(epsilon > 0.0) || epsilon > 0.25)
    throw InvalidConfig("epsilon must be in (0, 1/4]");
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw InvalidConfig("alpha must be in (0, 1)");
  const double eps48 = epsilon / 48.0;
  const double mem_branch = std::sqrt(alpha * std::log2(n) / (8.0 * eps48));
  const double arb_branch =
      std::sqrt(std::log2(static_cast<double>(lambda_guess)) / (8.0 * eps48));
  return std::max(1, static_cast<int>(
                         std::floor(std::min(mem_branch, arb_branch))));
}

double estimate_group_sum(const std::vector<double>& values, std::int64_t t,
                          Rng& rng) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  if (n <= t) {
    KahanSum sum;
    for (double v : values) sum.add(v);
    return sum.value();
  }
  KahanSum sum;
  for (std::int64_t i = 0; i < t; ++i)
    sum.add(values[rng.below(static_cast<std::uint64_t>(n))]);
  return (static_cast<double>(n) / static_cast<double>(t)) * sum.value();
}

MpcConfig MpcConfig::make(const AllocationInstance& instance, double epsilon,
                          double alpha, int lambda_guess,
                          std::uint64_t seed) {
  MpcConfig cfg;
  cfg.epsilon = epsilon;
  cfg.alpha = alpha;
  cfg.lambda_guess = lambda_guess;
  cfg.seed = seed;
  cfg.B = compute_B(std::max(2, instance.n()), lambda_guess, epsilon, alpha);
  const double log2n = std::log2(std::max(2, instance.n()));
  cfg.t = static_cast<std::int64_t>(
      std::ceil(pow_uint(1.0 + epsilon, 2 * static_cast<unsigned>(cfg.B)) *
                std::pow(epsilon, -5.0) * log2n));
  cfg.tau = default_tau(epsilon, lambda_guess);
  return cfg;
}

namespace {

int ceil_log2(int b) {
  int r = 0;
  while ((1 << r) < b) ++r;
  return r;
}

/// Group key of a left vertex as seen from the right side: the smallest
/// integer x with (1+eps)^x >= beta, clamped to [-2*tau, 2*tau].
int left_group_key(double beta, double epsilon, int tau) {
  if (!(beta > 0.0)) return -2 * tau;
  const double raw = std::log(beta) / std::log1p(epsilon);
  int key = static_cast<int>(std::ceil(raw - 1e-12));
  return std::clamp(key, -2 * tau, 2 * tau);
}

struct GroupScratch {
  // For one owner vertex: per distinct key, the member edge ids in
  // ascending order.
  std::map<int, std::vector<int>> by_key;
};

void build_side_groups(const AllocationInstance& instance,
                       const MpcConfig& config, MpcPhaseState& state,
                       bool left_owner, Rng phase_rng, int offsets) {
  auto& exact_flags = left_owner ? state.edge_exact_for_left
                                 : state.edge_exact_for_right;
  auto& sampled = left_owner ? state.left_groups : state.right_groups;
  exact_flags.assign(instance.m(), 1);
  sampled.clear();
  GroupScratch scratch;
  const int owners = left_owner ? instance.left_count()
                                : instance.right_count();
  for (int i = 0; i < owners; ++i) {
    const int owner = left_owner ? i : instance.left_count() + i;
    const auto inc = left_owner ? instance.edges_of_left(owner)
                                : instance.edges_of_right(owner);
    if (inc.empty()) continue;
    scratch.by_key.clear();
    for (int e : inc) {
      const Edge& edge = instance.edge(e);
      int key;
      if (left_owner) {
        // Neighbors are right vertices with exact integer exponents.
        key = std::clamp(state.exponent[instance.right_index(edge.v)],
                         -2 * config.tau, 2 * config.tau);
      } else {
        key = left_group_key(state.beta_left[edge.u], config.epsilon,
                             config.tau);
      }
      scratch.by_key[key].push_back(e);
    }
    for (auto& [key, members] : scratch.by_key) {
      if (static_cast<std::int64_t>(members.size()) <= config.t) continue;
      state.all_exact = false;
      MpcPhaseState::SampledGroup group;
      group.vertex = owner;
      group.key = key;
      group.size = static_cast<std::int64_t>(members.size());
      group.samples.resize(offsets);
      for (int e : members) exact_flags[e] = 0;
      for (int off = 0; off < offsets; ++off) {
        Rng draw = phase_rng.fork(static_cast<std::uint64_t>(off))
                       .fork(static_cast<std::uint64_t>(owner))
                       .fork(static_cast<std::uint64_t>(key + 2 * config.tau));
        auto& list = group.samples[off];
        list.reserve(config.t);
        for (std::int64_t s = 0; s < config.t; ++s)
          list.push_back(members[draw.below(members.size())]);
      }
      sampled.push_back(std::move(group));
    }
  }
}

/// Volume of the radius-B ball around `start` in the phase's sampled
/// graph (exact-flagged edges plus offset-0 reserved samples).
std::int64_t ball_volume(const AllocationInstance& instance,
                         const MpcPhaseState& state, int start, int radius) {
  std::vector<char> in_h(instance.m(), 0);
  for (int e = 0; e < instance.m(); ++e)
    in_h[e] = state.edge_exact_for_left[e] | state.edge_exact_for_right[e];
  const auto mark_samples = [&](const auto& groups) {
    for (const auto& g : groups)
      if (!g.samples.empty())
        for (int e : g.samples[0]) in_h[e] = 1;
  };
  mark_samples(state.left_groups);
  mark_samples(state.right_groups);

  std::vector<int> dist(instance.n(), -1);
  std::vector<int> queue{start};
  dist[start] = 0;
  std::int64_t volume = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    if (dist[v] == radius) continue;
    const auto inc = instance.is_left(v) ? instance.edges_of_left(v)
                                         : instance.edges_of_right(v);
    for (int e : inc) {
      if (!in_h[e]) continue;
      const Edge& edge = instance.edge(e);
      const int w = instance.is_left(v) ? edge.v : edge.u;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
        ++volume;
      }
    }
  }
  return volume;
}

void measure_phase_cost(const AllocationInstance& instance,
                        MpcPhaseState& state, const MpcConfig& config,
                        Rng phase_rng) {
  const int probes = std::max(1, instance.n() / 100);
  Rng probe_rng = phase_rng.fork(0xBA11);
  for (int p = 0; p < probes; ++p) {
    const int start = static_cast<int>(
        probe_rng.below(static_cast<std::uint64_t>(instance.n())));
    const std::int64_t vol = ball_volume(instance, state, start, config.B);
    state.cost.max_ball_volume = std::max(state.cost.max_ball_volume, vol);
    state.cost.total_memory_words += vol;
  }
}

}  // namespace

MpcPhaseState mpc_init(const AllocationInstance& instance,
                       const MpcConfig& config) {
  if (!(config.epsilon > 0.0) || config.epsilon > 0.25)
    throw InvalidConfig("epsilon must be in (0, 1/4]");
  if (config.B < 1 || config.t < 1 || config.tau < 1)
    throw InvalidConfig("B, t and tau must be >= 1");
  MpcPhaseState state;
  state.exponent.assign(instance.right_count(), 0);
  state.beta_left.assign(instance.left_count(), 0.0);
  for (int u = 0; u < instance.left_count(); ++u)
    state.beta_left[u] = static_cast<double>(instance.degree(u));
  state.est_alloc.assign(instance.right_count(), 0.0);
  state.cost.per_machine_bound = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(instance.n()), config.alpha)));
  state.cost.total_memory_words = instance.m();
  return state;
}

void run_mpc_phase(const AllocationInstance& instance, MpcPhaseState& state,
                   const MpcConfig& config, MpcTrace* trace) {
  const int offsets = std::min(config.B, config.tau - state.rounds_done);
  if (offsets <= 0) return;
  Rng phase_rng = Rng(config.seed).fork(0x9A5E)
                      .fork(static_cast<std::uint64_t>(state.phase_index));

  state.all_exact = true;
  build_side_groups(instance, config, state, /*left_owner=*/true,
                    phase_rng.fork(1), offsets);
  build_side_groups(instance, config, state, /*left_owner=*/false,
                    phase_rng.fork(2), offsets);

  const int nl = instance.left_count();
  const int nr = instance.right_count();
  std::vector<double> x_scratch, exact_alloc, exact_beta_left;
  std::vector<double> sample_values;

  for (int off = 0; off < offsets; ++off) {
    // Exact shadow of this round, from the same exponents. Doubles as the
    // whole estimate when no group anywhere overflows t.
    const bool want_exact = state.all_exact || trace != nullptr;
    if (want_exact)
      compute_proportional(instance, state.exponent, config.epsilon,
                           x_scratch, exact_alloc, &exact_beta_left);

    if (state.all_exact) {
      state.beta_left = exact_beta_left;
      state.est_alloc = exact_alloc;
    } else {
      // Current beta values per right vertex.
      std::vector<double> beta(nr);
      for (int r = 0; r < nr; ++r)
        beta[r] = priority_value(config.epsilon, state.exponent[r]);

      std::vector<double> new_beta_left(nl, 0.0);
      std::size_t gl = 0;
      for (int u = 0; u < nl; ++u) {
        const auto inc = instance.edges_of_left(u);
        if (inc.empty()) continue;
        KahanSum est;
        for (int e : inc)
          if (state.edge_exact_for_left[e])
            est.add(beta[instance.right_index(instance.edge(e).v)]);
        while (gl < state.left_groups.size() &&
               state.left_groups[gl].vertex == u) {
          const auto& group = state.left_groups[gl];
          KahanSum part;
          for (int e : group.samples[off])
            part.add(beta[instance.right_index(instance.edge(e).v)]);
          est.add((static_cast<double>(group.size) /
                   static_cast<double>(config.t)) *
                  part.value());
          ++gl;
        }
        new_beta_left[u] = est.value();
      }
      state.beta_left = std::move(new_beta_left);

      std::size_t gr = 0;
      for (int r = 0; r < nr; ++r) {
        const int v = nl + r;
        const auto inc = instance.edges_of_right(v);
        KahanSum est;
        for (int e : inc)
          if (state.edge_exact_for_right[e])
            est.add(beta[r] / state.beta_left[instance.edge(e).u]);
        while (gr < state.right_groups.size() &&
               state.right_groups[gr].vertex == v) {
          const auto& group = state.right_groups[gr];
          KahanSum part;
          for (int e : group.samples[off])
            part.add(beta[r] / state.beta_left[instance.edge(e).u]);
          est.add((static_cast<double>(group.size) /
                   static_cast<double>(config.t)) *
                  part.value());
          ++gr;
        }
        state.est_alloc[r] = est.value();
      }
    }

    std::vector<signed char> decisions(nr, 0);
    for (int r = 0; r < nr; ++r) {
      const double cap = instance.capacity(nl + r);
      if (state.est_alloc[r] <= cap / (1.0 + config.epsilon)) {
        ++state.exponent[r];
        decisions[r] = 1;
      } else if (state.est_alloc[r] >= cap * (1.0 + config.epsilon)) {
        --state.exponent[r];
        decisions[r] = -1;
      }
    }
    if (trace != nullptr) {
      trace->est_alloc.push_back(state.est_alloc);
      trace->exact_alloc.push_back(exact_alloc);
      trace->decision.push_back(std::move(decisions));
    }
    ++state.rounds_done;
  }

  measure_phase_cost(instance, state, config, phase_rng);
  state.cost.mpc_rounds += 1 + ceil_log2(config.B) + 1;
  ++state.cost.phases;
  ++state.phase_index;
}

namespace {

FractionalAllocation emit_allocation(const AllocationInstance& instance,
                                     const MpcPhaseState& state,
                                     double epsilon) {
  const int nl = instance.left_count();
  FractionalAllocation frac;
  frac.values.assign(instance.m(), 0.0);

  // Exact final beta values on both sides.
  std::vector<double> beta(instance.right_count());
  for (int r = 0; r < instance.right_count(); ++r)
    beta[r] = priority_value(epsilon, state.exponent[r]);
  for (int u = 0; u < nl; ++u) {
    const auto inc = instance.edges_of_left(u);
    if (inc.empty()) continue;
    KahanSum denom;
    for (int e : inc)
      denom.add(beta[instance.right_index(instance.edge(e).v)]);
    const double beta_u = denom.value();
    for (int e : inc) {
      const int r = instance.right_index(instance.edge(e).v);
      const double cap = instance.capacity(nl + r);
      const double est = state.est_alloc[r];
      const double scale = est > 0.0 ? std::min(1.0, cap / est) : 1.0;
      frac.values[e] = std::min(1.0, scale * beta[r] / beta_u);
    }
  }

  // The estimate-driven scaling can overshoot; one exact pass per side
  // restores feasibility.
  for (int r = 0; r < instance.right_count(); ++r) {
    const int v = nl + r;
    KahanSum sum;
    for (int e : instance.edges_of_right(v)) sum.add(frac.values[e]);
    const double cap = instance.capacity(v);
    if (sum.value() > cap) {
      const double fix = cap / sum.value();
      for (int e : instance.edges_of_right(v)) frac.values[e] *= fix;
    }
  }
  for (int u = 0; u < nl; ++u) {
    KahanSum sum;
    for (int e : instance.edges_of_left(u)) sum.add(frac.values[e]);
    if (sum.value() > 1.0) {
      const double fix = 1.0 / sum.value();
      for (int e : instance.edges_of_left(u)) frac.values[e] *= fix;
    }
  }
  KahanSum weight;
  for (double x : frac.values) weight.add(x);
  frac.weight = weight.value();
  return frac;
}

}  // namespace

MpcRunResult run_mpc(const AllocationInstance& instance,
                     const MpcConfig& config, MpcTrace* trace) {
  MpcPhaseState state = mpc_init(instance, config);
  while (state.rounds_done < config.tau)
    run_mpc_phase(instance, state, config, trace);
  MpcRunResult result;
  result.allocation = emit_allocation(instance, state, config.epsilon);
  result.cost = state.cost;
  result.final_exponent = state.exponent;
  result.final_est_alloc = state.est_alloc;
  result.rounds = state.rounds_done;
  return result;
}

MpcRunResult run_mpc(const AllocationInstance& instance, double epsilon,
                     double alpha, int lambda_guess, std::uint64_t seed,
                     MpcTrace* trace) {
  return run_mpc(instance,
                 MpcConfig::make(instance, epsilon, alpha, lambda_guess, seed),
                 trace);
}

namespace {

/// Termination test on the finished run, with loads recomputed exactly
/// from the last round's pre-update exponents.
bool guess_termination(const AllocationInstance& instance,
                       const MpcRunResult& run, const MpcTrace& trace,
                       double epsilon) {
  PriorityState probe;
  probe.exponent = run.final_exponent;
  probe.round = run.rounds;
  probe.alloc = trace.exact_alloc.back();
  return termination_check(instance, probe, epsilon);
}

}  // namespace

MpcGuessResult run_mpc_with_guessing(const AllocationInstance& instance,
                                     double epsilon, double alpha,
                                     std::uint64_t seed, MpcTrace* trace) {
  MpcGuessResult result;
  MpcCostReport accumulated;
  const int n = std::max(2, instance.n());
  for (int i = 1;; ++i) {
    // sqrt(log2 lambda_i) = 2^i, so lambda_i = 2^(4^i): 16, 65536, ...
    // The first trial always runs; later trials whose guess would pass n
    // fall back to the safe upper bound lambda = n.
    const int log_lambda = 1 << (2 * i);
    const bool overshoot =
        i > 1 && (log_lambda >= 31 || (1LL << log_lambda) > n);
    const int lambda_used =
        overshoot ? std::max(2, n) : static_cast<int>(1LL << log_lambda);
    MpcTrace local_trace;
    MpcTrace* run_trace = trace != nullptr ? trace : &local_trace;
    if (trace != nullptr) *trace = MpcTrace{};
    MpcRunResult run = run_mpc(
        instance,
        MpcConfig::make(instance, epsilon, alpha, lambda_used,
                        Rng(seed).fork(static_cast<std::uint64_t>(i)).state()),
        run_trace);
    accumulated.mpc_rounds += run.cost.mpc_rounds + 1;  // +1: the test
    accumulated.phases += run.cost.phases;
    accumulated.max_ball_volume =
        std::max(accumulated.max_ball_volume, run.cost.max_ball_volume);
    accumulated.total_memory_words =
        std::max(accumulated.total_memory_words, run.cost.total_memory_words);
    accumulated.per_machine_bound = run.cost.per_machine_bound;
    const bool terminated =
        guess_termination(instance, run, *run_trace, epsilon);
    if (terminated || overshoot) {
      run.cost = accumulated;
      result.run = std::move(run);
      result.lambda_used = lambda_used;
      result.guess_exhausted = !terminated;
      return result;
    }
  }
}

}  // namespace sparsealloc
