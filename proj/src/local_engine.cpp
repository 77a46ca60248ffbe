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
#include "sparsealloc/local_engine.hpp"

#include <algorithm>
#include <cmath>

#include "sparsealloc/errors.hpp"
#include "sparsealloc/numeric.hpp"

namespace sparsealloc {

ThresholdSchedule ThresholdSchedule::per_vertex_round(
    std::vector<std::vector<double>> table, double k_max) {
  if (k_max < 1.0) throw InvalidConfig("k_max must be >= 1");
  ThresholdSchedule s;
  s.k = std::move(table);
  s.k_max = k_max;
  return s;
}

void EngineConfig::validate(const AllocationInstance& instance) const {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw InvalidConfig("epsilon must be in (0, 1]");
  if (tau < 1) throw InvalidConfig("tau must be >= 1");
  if (!schedule.uniform()) {
    if (static_cast<int>(schedule.k.size()) < tau)
      throw InvalidConfig("schedule table covers fewer rounds than tau");
    bool any_nonunit = false;
    for (const auto& row : schedule.k) {
      if (static_cast<int>(row.size()) != instance.right_count())
        throw InvalidConfig("schedule row size mismatch");
      for (double kv : row) {
        if (kv < 1.0 / schedule.k_max - 1e-12 ||
            kv > schedule.k_max + 1e-12)
          throw InvalidConfig("schedule entry outside [1/k_max, k_max]");
        if (kv != 1.0) any_nonunit = true;
      }
    }
    if (any_nonunit && epsilon > 1.0 / schedule.k_max + 1e-12)
      throw InvalidConfig("epsilon must be <= 1/k_max for widened rules");
  }
}

void compute_proportional(const AllocationInstance& instance,
                          const std::vector<int>& exponent, double epsilon,
                          std::vector<double>& x_out,
                          std::vector<double>& alloc_out,
                          std::vector<double>* left_beta_out) {
  const int nl = instance.left_count();
  const int nr = instance.right_count();
  x_out.assign(instance.m(), 0.0);
  alloc_out.assign(nr, 0.0);
  if (left_beta_out != nullptr) left_beta_out->assign(nl, 0.0);

  // Priority values are materialized once per distinct exponent.
  int lo = 0, hi = 0;
  for (int j : exponent) {
    lo = std::min(lo, j);
    hi = std::max(hi, j);
  }
  std::vector<double> beta_table(hi - lo + 1);
  for (int j = lo; j <= hi; ++j) beta_table[j - lo] = priority_value(epsilon, j);
  const auto beta = [&](int right_index) {
    return beta_table[exponent[right_index] - lo];
  };

  for (int u = 0; u < nl; ++u) {
    const auto inc = instance.edges_of_left(u);
    if (inc.empty()) continue;
    KahanSum denom;
    for (int e : inc) denom.add(beta(instance.right_index(instance.edge(e).v)));
    const double s = denom.value();
    if (left_beta_out != nullptr) (*left_beta_out)[u] = s;
    for (int e : inc)
      x_out[e] = beta(instance.right_index(instance.edge(e).v)) / s;
  }
  for (int r = 0; r < nr; ++r) {
    KahanSum load;
    for (int e : instance.edges_of_right(nl + r)) load.add(x_out[e]);
    alloc_out[r] = load.value();
  }
}

PriorityState init_state(const AllocationInstance& instance) {
  PriorityState state;
  state.exponent.assign(instance.right_count(), 0);
  state.alloc.assign(instance.right_count(), 0.0);
  state.x_cache.assign(instance.m(), 0.0);
  return state;
}

std::pair<int, int> advance_round(const AllocationInstance& instance,
                                  PriorityState& state, double epsilon,
                                  const ThresholdSchedule& schedule) {
  compute_proportional(instance, state.exponent, epsilon, state.x_cache,
                       state.alloc);
  const int round = state.round + 1;
  int increased = 0, decreased = 0;
  for (int r = 0; r < instance.right_count(); ++r) {
    const double cap = instance.capacity(instance.left_count() + r);
    const double widen = schedule.at(round, r);
    if (state.alloc[r] <= cap / (1.0 + widen * epsilon)) {
      ++state.exponent[r];
      ++increased;
    } else if (state.alloc[r] >= cap * (1.0 + widen * epsilon)) {
      --state.exponent[r];
      ++decreased;
    }
  }
  state.round = round;
  return {increased, decreased};
}

namespace {

void append_trace(const AllocationInstance& instance,
                  const PriorityState& state, int increased, int decreased,
                  std::vector<RoundTraceRow>& trace) {
  const LevelSetView view = level_sets(instance, state);
  trace.push_back({state.round, increased, decreased,
                   match_weight(instance, state),
                   static_cast<int>(view.top.size()),
                   static_cast<int>(view.bottom.size()),
                   static_cast<int>(view.top_neighborhood.size())});
}

}  // namespace

PriorityState run_rounds(const AllocationInstance& instance,
                         const EngineConfig& config,
                         std::vector<RoundTraceRow>* trace,
                         DecisionTrace* decisions) {
  config.validate(instance);
  PriorityState state = init_state(instance);
  std::vector<int> before;
  for (int r = 1; r <= config.tau; ++r) {
    if (decisions != nullptr) before = state.exponent;
    const auto [inc, dec] =
        advance_round(instance, state, config.epsilon, config.schedule);
    if (decisions != nullptr) {
      std::vector<signed char> row(instance.right_count());
      for (int i = 0; i < instance.right_count(); ++i)
        row[i] = static_cast<signed char>(state.exponent[i] - before[i]);
      decisions->per_round.push_back(std::move(row));
    }
    if (trace != nullptr) append_trace(instance, state, inc, dec, *trace);
  }
  return state;
}

FractionalAllocation finalize(const AllocationInstance& instance,
                              const PriorityState& state) {
  FractionalAllocation frac;
  frac.values.assign(instance.m(), 0.0);
  const int nl = instance.left_count();
  KahanSum weight;
  for (int r = 0; r < instance.right_count(); ++r) {
    const int v = nl + r;
    const double cap = instance.capacity(v);
    const double load = state.alloc[r];
    const double scale = load > cap ? cap / load : 1.0;
    for (int e : instance.edges_of_right(v))
      frac.values[e] = std::min(1.0, state.x_cache[e] * scale);
    weight.add(std::min(cap, load));
  }
  frac.weight = weight.value();
  return frac;
}

LevelSetView level_sets(const AllocationInstance& instance,
                        const PriorityState& state) {
  LevelSetView view;
  view.round = state.round;
  view.levels.assign(2 * state.round + 1, {});
  const int nl = instance.left_count();
  for (int r = 0; r < instance.right_count(); ++r)
    view.levels[state.exponent[r] + state.round].push_back(nl + r);
  view.top = view.levels.back();
  view.bottom = view.levels.front();
  std::vector<char> mark(nl, 0);
  for (int v : view.top)
    for (int e : instance.edges_of_right(v)) mark[instance.edge(e).u] = 1;
  for (int u = 0; u < nl; ++u)
    if (mark[u]) view.top_neighborhood.push_back(u);
  return view;
}

double match_weight(const AllocationInstance& instance,
                    const PriorityState& state) {
  KahanSum sum;
  for (int r = 0; r < instance.right_count(); ++r)
    sum.add(std::min(
        static_cast<double>(instance.capacity(instance.left_count() + r)),
        state.alloc[r]));
  return sum.value();
}

bool termination_check(const AllocationInstance& instance,
                       const PriorityState& state, double epsilon) {
  const int nl = instance.left_count();
  const int r = state.round;
  std::vector<char> mark(nl, 0);
  int top_nbhd = 0;
  int bottom = 0;
  KahanSum outside_bottom;
  for (int i = 0; i < instance.right_count(); ++i) {
    if (state.exponent[i] == r) {
      for (int e : instance.edges_of_right(nl + i)) {
        const int u = instance.edge(e).u;
        if (!mark[u]) {
          mark[u] = 1;
          ++top_nbhd;
        }
      }
    }
    if (state.exponent[i] == -r) {
      ++bottom;
    } else {
      outside_bottom.add(state.alloc[i]);
    }
  }
  if (top_nbhd <= bottom) return true;
  return outside_bottom.value() >= (1.0 - epsilon / 2.0) * top_nbhd;
}

AutoTerminationResult run_until_terminated(
    const AllocationInstance& instance, double epsilon, int max_rounds,
    std::vector<RoundTraceRow>* trace) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw InvalidConfig("epsilon must be in (0, 1]");
  if (max_rounds < 1) throw InvalidConfig("max_rounds must be >= 1");
  AutoTerminationResult result;
  result.state = init_state(instance);
  const ThresholdSchedule uniform;
  for (int r = 1; r <= max_rounds; ++r) {
    const auto [inc, dec] =
        advance_round(instance, result.state, epsilon, uniform);
    if (trace != nullptr) append_trace(instance, result.state, inc, dec, *trace);
    result.rounds_used = r;
    if (termination_check(instance, result.state, epsilon)) {
      result.allocation = finalize(instance, result.state);
      return result;
    }
  }
  result.budget_exhausted = true;
  result.allocation = finalize(instance, result.state);
  return result;
}

int default_tau(double epsilon, int lambda) {
  if (!(epsilon > 0.0)) throw InvalidConfig("epsilon must be positive");
  if (lambda < 1) throw InvalidConfig("lambda must be >= 1");
  const double ratio =
      std::log(4.0 * lambda / epsilon) / std::log1p(epsilon);
  return static_cast<int>(std::ceil(ratio)) + 1;
}

}  // namespace sparsealloc
