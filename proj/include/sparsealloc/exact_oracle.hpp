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

namespace sparsealloc {

struct OracleResult {
  int opt_size = 0;
  IntegralAllocation witness;
};

/// Exact optimum via blocking-flow max-flow on the arc-capacitated
/// network source -> u (cap 1), u -> v (cap 1 per edge), v -> sink
/// (cap C_v). The integral optimum here equals the fractional one, so
/// the result also serves as the fractional OPT.
OracleResult opt_flow(const AllocationInstance& instance);

/// Independent oracle: maximum over all feasible edge subsets, by
/// exhaustive branch and bound. Throws TooLarge when m > 24.
int opt_brute(const AllocationInstance& instance);

}  // namespace sparsealloc
