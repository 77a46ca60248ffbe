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
#include "sparsealloc/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "sparsealloc/errors.hpp"

namespace sparsealloc {

IntegralAllocation keep_after_heavy_drop(const AllocationInstance& instance,
                                         const std::vector<char>& sampled) {
  std::vector<int> left_deg(instance.left_count(), 0);
  std::vector<int> right_deg(instance.right_count(), 0);
  for (int e = 0; e < instance.m(); ++e) {
    if (!sampled[e]) continue;
    ++left_deg[instance.edge(e).u];
    ++right_deg[instance.right_index(instance.edge(e).v)];
  }
  IntegralAllocation kept;
  for (int e = 0; e < instance.m(); ++e) {
    if (!sampled[e]) continue;
    const Edge& edge = instance.edge(e);
    if (left_deg[edge.u] > 1) continue;
    if (right_deg[instance.right_index(edge.v)] > instance.capacity(edge.v))
      continue;
    kept.edge_ids.push_back(e);
  }
  return kept;
}

RoundingReport round_once(const AllocationInstance& instance,
                          const FractionalAllocation& frac, Rng& rng) {
  std::vector<char> sampled(instance.m(), 0);
  int sampled_count = 0;
  for (int e = 0; e < instance.m(); ++e) {
    const double p = std::clamp(frac.values[e], 0.0, 1.0) / 6.0;
    if (rng.unit() < p) {
      sampled[e] = 1;
      ++sampled_count;
    }
  }
  RoundingReport report;
  report.kept_edges = keep_after_heavy_drop(instance, sampled);
  report.sampled_count = sampled_count;
  report.dropped_heavy_count = sampled_count - report.kept_edges.size();
  report.weight_fraction_input = frac.weight;
  return report;
}

IntegralAllocation round_best_of(const AllocationInstance& instance,
                                 const FractionalAllocation& frac, int copies,
                                 const Rng& rng) {
  if (copies < 1) throw InvalidConfig("copies must be >= 1");
  IntegralAllocation best;
  for (int c = 0; c < copies; ++c) {
    Rng copy_rng = rng.fork(static_cast<std::uint64_t>(c));
    RoundingReport report = round_once(instance, frac, copy_rng);
    if (report.kept_edges.size() > best.size())
      best = std::move(report.kept_edges);
  }
  return best;
}

int default_copies(int n) {
  int bits = 0;
  while ((1LL << bits) < std::max(1, n)) ++bits;
  return bits + 1;
}

}  // namespace sparsealloc
