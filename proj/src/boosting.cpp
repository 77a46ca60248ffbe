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
#include "sparsealloc/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "sparsealloc/errors.hpp"
#include "sparsealloc/local_engine.hpp"
#include "sparsealloc/rounding.hpp"

namespace sparsealloc {

SplitGraph split_to_matching_graph(const AllocationInstance& instance,
                                   const IntegralAllocation& m) {
  SplitGraph split;
  const int n = instance.n();
  split.copy_off.assign(n + 1, 0);
  for (int v = 0; v < n; ++v)
    split.copy_off[v + 1] =
        split.copy_off[v] + (instance.is_left(v) ? 1 : instance.capacity(v));
  const int copies = split.copy_off[n];
  split.copy_owner.resize(copies);
  for (int v = 0; v < n; ++v)
    for (int c = split.copy_off[v]; c < split.copy_off[v + 1]; ++c)
      split.copy_owner[c] = v;
  split.partner.assign(copies, -1);
  split.in_matching.assign(instance.m(), 0);

  std::vector<int> next_free(n);
  for (int v = 0; v < n; ++v) next_free[v] = split.copy_off[v];
  std::vector<int> sorted(m.edge_ids);
  std::sort(sorted.begin(), sorted.end());
  for (int e : sorted) {
    const Edge& edge = instance.edge(e);
    const int cu = next_free[edge.u]++;
    const int cv = next_free[edge.v]++;
    split.partner[cu] = cv;
    split.partner[cv] = cu;
    split.pair_left_copy.push_back(cu);
    split.pair_right_copy.push_back(cv);
    split.pair_edge.push_back(e);
    split.in_matching[e] = 1;
  }
  return split;
}

LayeredChoices draw_layered_choices(const SplitGraph& split,
                                    const AllocationInstance& instance, int k,
                                    Rng& rng) {
  LayeredChoices choices;
  choices.arc_layer.resize(split.pair_count());
  for (int p = 0; p < split.pair_count(); ++p)
    choices.arc_layer[p] =
        1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  choices.cross_level.assign(instance.m(), -1);
  for (int e = 0; e < instance.m(); ++e)
    if (!split.in_matching[e])
      choices.cross_level[e] =
          static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
  return choices;
}

LayeredGraph build_layered(const SplitGraph& split,
                           const AllocationInstance& instance, int k,
                           const LayeredChoices& choices) {
  if (k < 1) throw InvalidConfig("k must be >= 1");
  LayeredGraph lg;
  lg.k = k;
  lg.arc_layer = choices.arc_layer;
  lg.cross_level = choices.cross_level;
  lg.layers.assign(k + 2, {});

  // Free copies: left side to layer 0, right side to layer k+1.
  std::vector<char> left_free(instance.left_count(), 0);
  std::vector<int> right_free(instance.right_count(), 0);
  for (int c = 0; c < split.copy_count(); ++c) {
    if (split.partner[c] >= 0) continue;
    const int owner = split.copy_owner[c];
    if (instance.is_left(owner)) {
      lg.layers[0].push_back(c);
      left_free[owner] = 1;
    } else {
      lg.layers[k + 1].push_back(c);
      ++right_free[instance.right_index(owner)];
    }
  }
  for (int p = 0; p < split.pair_count(); ++p) {
    lg.layers[lg.arc_layer[p]].push_back(split.pair_left_copy[p]);
    lg.layers[lg.arc_layer[p]].push_back(split.pair_right_copy[p]);
  }

  // Heads per (left vertex, layer) and tail copy counts per
  // (right vertex, layer).
  std::vector<int> head_layer(instance.left_count(), -1);
  std::map<std::pair<int, int>, int> tail_count;  // (right_index, layer)
  for (int p = 0; p < split.pair_count(); ++p) {
    const Edge& edge = instance.edge(split.pair_edge[p]);
    head_layer[edge.u] = lg.arc_layer[p];
    ++tail_count[{instance.right_index(edge.v), lg.arc_layer[p]}];
  }

  lg.boundaries.assign(k + 1, {});
  for (int i = 0; i <= k; ++i) {
    auto& boundary = lg.boundaries[i];
    std::vector<char> left_in(instance.left_count(), 0);
    std::map<int, int> right_in;  // right_index -> b'
    for (int e = 0; e < instance.m(); ++e) {
      if (lg.cross_level[e] != i) continue;
      const Edge& edge = instance.edge(e);
      const bool u_present =
          i == 0 ? static_cast<bool>(left_free[edge.u]) : head_layer[edge.u] == i;
      if (!u_present) continue;
      const int r = instance.right_index(edge.v);
      int copies_here = 0;
      if (i + 1 <= k) {
        const auto it = tail_count.find({r, i + 1});
        copies_here = it == tail_count.end() ? 0 : it->second;
      } else {
        copies_here = right_free[r];
      }
      if (copies_here == 0) continue;
      boundary.cross_edges.push_back(e);
      left_in[edge.u] = 1;
      right_in[r] = copies_here;
    }
    for (int u = 0; u < instance.left_count(); ++u)
      if (left_in[u]) boundary.left_vertices.push_back(u);
    for (const auto& [r, bprime] : right_in) {
      boundary.right_vertices.push_back(instance.left_count() + r);
      boundary.right_caps.push_back(bprime);
    }
  }
  return lg;
}

LayeredGraph build_layered(const SplitGraph& split,
                           const AllocationInstance& instance, int k,
                           Rng& rng) {
  const LayeredChoices choices = draw_layered_choices(split, instance, k, rng);
  return build_layered(split, instance, k, choices);
}

AllocSolver default_boost_solver() {
  return [](const AllocationInstance& inst, Rng& rng) -> IntegralAllocation {
    if (inst.m() == 0) return {};
    const double eps = 0.25;
    const int lambda = inst.arboricity_hint().value_or(
        std::max(1, degeneracy(inst)));
    const auto result =
        run_until_terminated(inst, eps, default_tau(eps, std::max(1, lambda)));
    Rng round_rng = rng.fork(0x30AD);
    return round_best_of(inst, result.allocation, default_copies(inst.n()),
                         round_rng);
  };
}

namespace {

/// Per-boundary b'-matching restated as a plain allocation instance plus
/// the mapping back to original edge ids.
struct BoundaryProblem {
  AllocationInstance instance;
  std::vector<int> orig_edges;  // per local edge id
};

BoundaryProblem boundary_problem(const AllocationInstance& instance,
                                 const LayeredBoundary& boundary) {
  BoundaryProblem problem;
  std::unordered_map<int, int> left_id, right_id;
  left_id.reserve(boundary.left_vertices.size());
  right_id.reserve(boundary.right_vertices.size());
  for (std::size_t i = 0; i < boundary.left_vertices.size(); ++i)
    left_id[boundary.left_vertices[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < boundary.right_vertices.size(); ++i)
    right_id[boundary.right_vertices[i]] = static_cast<int>(i);
  const int nl = static_cast<int>(boundary.left_vertices.size());
  std::vector<Edge> edges;
  std::vector<int> orig_sorted(boundary.cross_edges);
  // Local edge ids must match the canonical (u, v) order the builder
  // applies, so pre-sort the originals the same way.
  std::sort(orig_sorted.begin(), orig_sorted.end(), [&](int a, int b) {
    const Edge& ea = instance.edge(a);
    const Edge& eb = instance.edge(b);
    return std::pair(left_id[ea.u], right_id[ea.v]) <
           std::pair(left_id[eb.u], right_id[eb.v]);
  });
  for (int e : orig_sorted) {
    const Edge& edge = instance.edge(e);
    edges.push_back({left_id[edge.u], nl + right_id[edge.v]});
  }
  problem.orig_edges = std::move(orig_sorted);
  std::optional<int> hint = instance.arboricity_hint();
  problem.instance = build_instance(
      nl, static_cast<int>(boundary.right_vertices.size()), std::move(edges),
      boundary.right_caps, hint);
  return problem;
}

struct StitchedWalks {
  std::vector<int> add_edges;     // original cross edges, all walks
  std::vector<int> remove_edges;  // original matched edges, all walks
  int walk_count = 0;
};

/// Greedy left-to-right assembly of complete layer-0 to layer-(k+1)
/// walks from the selected boundary edges. Claims are tentative per walk
/// and released when a walk cannot reach the last layer.
StitchedWalks stitch_walks(const AllocationInstance& instance,
                           const SplitGraph& split, const LayeredGraph& lg,
                           const std::vector<std::vector<int>>& selected) {
  const int k = lg.k;
  // Selected boundary edge per left vertex (capacity 1 ensures unicity).
  std::vector<std::vector<int>> sel_by_u(
      k + 1, std::vector<int>(instance.left_count(), -1));
  for (int i = 0; i <= k; ++i)
    for (int e : selected[i]) sel_by_u[i][instance.edge(e).u] = e;

  // Arcs (matched pairs) of each right vertex per layer, consumable once.
  std::map<std::pair<int, int>, std::vector<int>> arcs_at;
  for (int p = 0; p < split.pair_count(); ++p) {
    const Edge& edge = instance.edge(split.pair_edge[p]);
    arcs_at[{instance.right_index(edge.v), lg.arc_layer[p]}].push_back(p);
  }
  std::vector<char> arc_claimed(split.pair_count(), 0);
  std::vector<int> free_budget(instance.right_count(), 0);
  for (int r = 0; r < instance.right_count(); ++r)
    free_budget[r] = instance.capacity(instance.left_count() + r);
  for (int p = 0; p < split.pair_count(); ++p)
    --free_budget[instance.right_index(instance.edge(split.pair_edge[p]).v)];

  StitchedWalks out;
  for (int e0 : selected[0]) {
    std::vector<int> walk_edges{e0};
    std::vector<int> walk_arcs;
    bool complete = false;
    int cur_r = instance.right_index(instance.edge(e0).v);
    for (int layer = 1; layer <= k + 1; ++layer) {
      if (layer == k + 1) {
        if (free_budget[cur_r] > 0) {
          --free_budget[cur_r];
          complete = true;
        }
        break;
      }
      int arc = -1;
      const auto it = arcs_at.find({cur_r, layer});
      if (it != arcs_at.end()) {
        for (int p : it->second)
          if (!arc_claimed[p]) {
            arc = p;
            break;
          }
      }
      if (arc < 0) break;
      arc_claimed[arc] = 1;
      walk_arcs.push_back(arc);
      const int u_next = instance.edge(split.pair_edge[arc]).u;
      const int e_next = sel_by_u[layer][u_next];
      if (e_next < 0) break;
      sel_by_u[layer][u_next] = -1;  // consume
      walk_edges.push_back(e_next);
      cur_r = instance.right_index(instance.edge(e_next).v);
    }
    if (complete) {
      ++out.walk_count;
      for (int e : walk_edges) out.add_edges.push_back(e);
      for (int p : walk_arcs) out.remove_edges.push_back(split.pair_edge[p]);
    } else {
      for (int p : walk_arcs) arc_claimed[p] = 0;
      for (std::size_t j = 1; j < walk_edges.size(); ++j) {
        const int e = walk_edges[j];
        sel_by_u[lg.cross_level[e]][instance.edge(e).u] = e;  // release
      }
    }
  }
  return out;
}

}  // namespace

IntegralAllocation boost_allocation(const AllocationInstance& instance,
                                    const BoostOptions& options,
                                    const AllocSolver& solver, Rng rng) {
  if (!(options.epsilon > 0.0))
    throw InvalidConfig("epsilon must be positive");
  const int k = std::max(1, static_cast<int>(std::ceil(2.0 / options.epsilon)));
  int budget = options.max_iterations;
  if (budget <= 0) {
    double kk = std::pow(static_cast<double>(k), k);
    budget = kk > 10000.0 ? 10000 : static_cast<int>(std::ceil(kk));
  }

  Rng seed_rng = rng.fork(0x5EED);
  IntegralAllocation current = solver(instance, seed_rng);
  if (!validate_integral(instance, current))
    throw InvalidConfig("solver produced an infeasible allocation");

  std::vector<char> in_m(instance.m(), 0);
  for (int e : current.edge_ids) in_m[e] = 1;

  int since_improvement = 0;
  for (int iter = 0; iter < budget; ++iter) {
    const int layers_now = 1 + iter % k;
    Rng iter_rng = rng.fork(static_cast<std::uint64_t>(iter) + 1);
    const SplitGraph split = split_to_matching_graph(instance, current);
    const LayeredGraph lg =
        build_layered(split, instance, layers_now, iter_rng);

    std::vector<std::vector<int>> selected(layers_now + 1);
    for (int i = 0; i <= layers_now; ++i) {
      const auto& boundary = lg.boundaries[i];
      if (boundary.cross_edges.empty()) continue;
      BoundaryProblem problem = boundary_problem(instance, boundary);
      Rng solve_rng = iter_rng.fork(static_cast<std::uint64_t>(i));
      const IntegralAllocation sol = solver(problem.instance, solve_rng);
      for (int local : sol.edge_ids)
        selected[i].push_back(problem.orig_edges[local]);
    }

    const StitchedWalks walks = stitch_walks(instance, split, lg, selected);
    if (walks.walk_count > 0) {
      for (int e : walks.remove_edges) in_m[e] = 0;
      for (int e : walks.add_edges) in_m[e] = 1;
      current.edge_ids.clear();
      for (int e = 0; e < instance.m(); ++e)
        if (in_m[e]) current.edge_ids.push_back(e);
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (options.on_iteration &&
        !options.on_iteration(iter + 1, current.size(), walks.walk_count))
      break;
    if (since_improvement >= options.stagnation_window) break;
  }
  return current;
}

}  // namespace sparsealloc
