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

#include <functional>
#include <vector>

#include "sparsealloc/instance.hpp"
#include "sparsealloc/rng.hpp"

namespace sparsealloc {

/// Copy-expanded view of (instance, M): one copy per unit of capacity
/// (1 for left vertices, C_v for right vertices). The chosen edges form
/// a matching on copies; each matched original edge occupies exactly one
/// copy pair (lowest free indices, deterministically).
struct SplitGraph {
  std::vector<int> copy_off;        // per original vertex, first copy id
  std::vector<int> copy_owner;      // per copy, owning original vertex
  std::vector<int> partner;         // per copy, matched partner copy or -1
  std::vector<int> pair_left_copy;  // per matched pair
  std::vector<int> pair_right_copy;
  std::vector<int> pair_edge;       // per matched pair, original edge id
  std::vector<char> in_matching;    // per original edge

  int copy_count() const { return static_cast<int>(copy_owner.size()); }
  int pair_count() const { return static_cast<int>(pair_edge.size()); }
};

SplitGraph split_to_matching_graph(const AllocationInstance& instance,
                                   const IntegralAllocation& m);

/// Random placement choices behind a layered graph, separated out so
/// tests can enumerate them exhaustively. Matched pairs draw layers in
/// ascending pair order, then unmatched edges draw levels in ascending
/// edge order.
struct LayeredChoices {
  std::vector<int> arc_layer;    // per matched pair, in 1..k
  std::vector<int> cross_level;  // per original edge, 0..k or -1 if matched
};

LayeredChoices draw_layered_choices(const SplitGraph& split,
                                    const AllocationInstance& instance, int k,
                                    Rng& rng);

/// One boundary between H_i (left-side heads, each capacity 1) and
/// T_{i+1} (right-side tails or free copies, contracted with capacity
/// b' = number of copies).
struct LayeredBoundary {
  std::vector<int> left_vertices;   // original left ids in H_i
  std::vector<int> right_vertices;  // original right ids (global) in T_{i+1}
  std::vector<int> right_caps;      // contracted capacities b'
  std::vector<int> cross_edges;     // original edge ids realized here
};

/// Layered graph over the split copies: free left copies sit in layer 0
/// and free right copies in layer k+1; every matched edge becomes an arc
/// oriented right-to-left in one of the layers 1..k; every unmatched
/// edge is oriented left-to-right and realized at its drawn boundary iff
/// both endpoints have copies there.
struct LayeredGraph {
  int k = 0;
  std::vector<int> arc_layer;    // per matched pair
  std::vector<int> cross_level;  // per original edge (-1 for matched)
  std::vector<std::vector<int>> layers;     // copy ids, size k+2
  std::vector<LayeredBoundary> boundaries;  // size k+1, index i joins
                                            // H_i to T_{i+1}
};

LayeredGraph build_layered(const SplitGraph& split,
                           const AllocationInstance& instance, int k,
                           const LayeredChoices& choices);

LayeredGraph build_layered(const SplitGraph& split,
                           const AllocationInstance& instance, int k,
                           Rng& rng);

/// Constant-approximate allocation routine used to seed the boosting loop
/// and to solve the per-boundary b'-matchings.
using AllocSolver =
    std::function<IntegralAllocation(const AllocationInstance&, Rng&)>;

/// Priority iteration with automatic termination followed by best-of
/// randomized rounding.
AllocSolver default_boost_solver();

struct BoostOptions {
  double epsilon = 0.25;
  int max_iterations = 0;      // 0: min(k^k, 10000) with k = ceil(2/eps)
  int stagnation_window = 500; // stop after this many flat iterations
  /// Called after every iteration; returning false stops the loop.
  std::function<bool(int iteration, int size, int walks_applied)>
      on_iteration;
};

/// Starts from the solver's allocation and repeatedly augments along
/// vertex-disjoint walks stitched from per-boundary b'-matchings in a
/// fresh random layered graph. The walk length cycles: iteration i uses
/// j = 1 + (i mod k) middle layers, so augmenting walks of every length
/// up to 2k+1 are reachable. The allocation size never decreases.
IntegralAllocation boost_allocation(const AllocationInstance& instance,
                                    const BoostOptions& options,
                                    const AllocSolver& solver, Rng rng);

}  // namespace sparsealloc
