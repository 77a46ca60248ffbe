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
#include <optional>
#include <string>

#include "sparsealloc/instance.hpp"

namespace sparsealloc {

enum class GenKind { forest_union, star, random_bipartite };

enum class CapacityRule { all_one, uniform_random, degree_proportional };

/// Seeded generator description. The seed fully determines the output;
/// the same spec produces byte-identical instances on every platform.
struct GenSpec {
  GenKind kind = GenKind::forest_union;
  int left_count = 0;
  int right_count = 0;
  int lambda = 1;  // forest_union: number of forest layers
  std::optional<double> edge_prob;  // random_bipartite, one of the two
  std::optional<int> target_m;
  CapacityRule capacity_rule = CapacityRule::all_one;
  int capacity_max = 1;  // uniform_random: capacities in [1, capacity_max]
  std::uint64_t seed = 0;
};

/// Union of `lambda` random bipartite forests, so the arboricity is at
/// most lambda by construction; the hint is set accordingly. Each forest
/// is grown incrementally over a random vertex permutation, attaching
/// every new vertex to a uniformly chosen earlier vertex of the opposite
/// side (vertices with no eligible anchor start their own component).
/// If lambda >= min(nL, nR) the layers collapse onto few distinct edges;
/// the instance is still produced and *degenerate_warning, when given,
/// is set.
AllocationInstance gen_forest_union(const GenSpec& spec,
                                    bool* degenerate_warning = nullptr);

/// `leaf_count` left leaves attached to a single right center of the
/// given capacity.
AllocationInstance gen_star(int leaf_count, int center_capacity);

/// Either every L x R pair independently with edge_prob, or exactly
/// target_m distinct pairs sampled without replacement. The arboricity
/// hint is the degeneracy computed post hoc.
AllocationInstance gen_random_bipartite(const GenSpec& spec);

AllocationInstance generate(const GenSpec& spec,
                            bool* degenerate_warning = nullptr);

/// Compact one-line spec syntax used by the CLI, e.g.
///   forest:nl=100,nr=100,lambda=3,cap=one,seed=7
///   star:leaves=5,cap=2
///   random:nl=20,nr=20,p=0.3,cap=uniform:4,seed=1
///   random:nl=20,nr=20,m=60,cap=degprop,seed=1
/// Throws InvalidConfig on anything unparseable.
GenSpec parse_gen_spec(const std::string& text);

}  // namespace sparsealloc
