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

#include "sparsealloc/instance.hpp"
#include "sparsealloc/rng.hpp"

namespace sparsealloc {

struct RoundingReport {
  IntegralAllocation kept_edges;
  int sampled_count = 0;
  int dropped_heavy_count = 0;
  double weight_fraction_input = 0.0;
};

/// Pure second half of the rounding step: given the sampled edge flags,
/// drops every sampled edge incident to a vertex whose sampled degree
/// exceeds its capacity (1 on the left, C_v on the right) and keeps the
/// rest. Exposed separately so the case analysis can be enumerated
/// exhaustively in tests.
IntegralAllocation keep_after_heavy_drop(const AllocationInstance& instance,
                                         const std::vector<char>& sampled);

/// Samples every edge independently with probability value/6, then
/// applies the heavy-vertex drop. Output is always feasible.
RoundingReport round_once(const AllocationInstance& instance,
                          const FractionalAllocation& frac, Rng& rng);

/// Largest result among `copies` independent rounding attempts, each on
/// its own child stream rng.fork(copy). Ties keep the earliest copy.
IntegralAllocation round_best_of(const AllocationInstance& instance,
                                 const FractionalAllocation& frac, int copies,
                                 const Rng& rng);

/// ceil(log2 n) + 1, the default amplification count.
int default_copies(int n);

}  // namespace sparsealloc
