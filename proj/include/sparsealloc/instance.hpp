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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sparsealloc {

struct Edge {
  int u = 0;  // left endpoint, 0 <= u < left_count
  int v = 0;  // right endpoint, left_count <= v < left_count + right_count

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bipartite capacity-constrained instance. Vertex ids are dense integers
/// 0..n-1 with the left side occupying the prefix 0..left_count-1. Left
/// vertices carry an implicit capacity of 1; right vertices carry an
/// explicit positive capacity. Instances are immutable after construction
/// and safe to share across threads.
class AllocationInstance {
 public:
  AllocationInstance() = default;

  int left_count() const { return left_count_; }
  int right_count() const { return right_count_; }
  int n() const { return left_count_ + right_count_; }
  int m() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  bool is_left(int vertex) const { return vertex < left_count_; }
  int right_index(int v) const { return v - left_count_; }

  /// Capacity of right vertex `v` (global id).
  int capacity(int v) const { return capacities_[v - left_count_]; }
  const std::vector<int>& capacities() const { return capacities_; }

  std::optional<int> arboricity_hint() const { return arboricity_hint_; }
  void set_arboricity_hint(int lambda) { arboricity_hint_ = lambda; }

  /// Edge ids incident to left vertex `u`, ascending by right endpoint.
  std::span<const int> edges_of_left(int u) const {
    return {left_adj_.data() + left_off_[u],
            left_adj_.data() + left_off_[u + 1]};
  }

  /// Edge ids incident to right vertex `v` (global id), ascending by left
  /// endpoint.
  std::span<const int> edges_of_right(int v) const {
    const int r = v - left_count_;
    return {right_adj_.data() + right_off_[r],
            right_adj_.data() + right_off_[r + 1]};
  }

  int degree(int vertex) const {
    if (is_left(vertex)) return static_cast<int>(edges_of_left(vertex).size());
    return static_cast<int>(edges_of_right(vertex).size());
  }

  friend AllocationInstance build_instance(int left_count, int right_count,
                                           std::vector<Edge> edges,
                                           std::vector<int> capacities,
                                           std::optional<int> arboricity_hint);

 private:
  int left_count_ = 0;
  int right_count_ = 0;
  std::vector<Edge> edges_;  // sorted by (u, v), no duplicates
  std::vector<int> capacities_;
  std::optional<int> arboricity_hint_;

  // CSR adjacency over edge ids, one view per side.
  std::vector<int> left_off_, left_adj_;
  std::vector<int> right_off_, right_adj_;
};

/// Validates and canonicalizes (sorts edges by (u, v)); throws
/// MalformedInstance on range violations, duplicate edges or
/// non-positive capacities.
AllocationInstance build_instance(int left_count, int right_count,
                                  std::vector<Edge> edges,
                                  std::vector<int> capacities,
                                  std::optional<int> arboricity_hint = {});

/// Subset of edge ids obeying both degree constraints.
struct IntegralAllocation {
  std::vector<int> edge_ids;

  int size() const { return static_cast<int>(edge_ids.size()); }
};

/// Per-edge values in [0, 1]; `weight` caches the value total.
struct FractionalAllocation {
  std::vector<double> values;  // indexed by edge id
  double weight = 0.0;
};

/// True iff every left vertex has at most one chosen edge and every right
/// vertex v at most capacity(v). Never throws on constraint violations;
/// out-of-range edge ids throw MalformedInstance.
bool validate_integral(const AllocationInstance& instance,
                       const IntegralAllocation& alloc);

/// Feasibility flag plus the recomputed weight. Accepts sums up to the
/// documented float slack: left sums <= 1 + 1e-9, right sums
/// <= capacity * (1 + 1e-9), and requires the cached weight to match the
/// recomputed one within 1e-9 relative error.
std::pair<bool, double> validate_fractional(const AllocationInstance& instance,
                                            const FractionalAllocation& frac);

/// Graph degeneracy via iterative minimum-degree peeling. Sandwiches the
/// arboricity lambda: lambda <= degeneracy <= 2*lambda - 1.
int degeneracy(const AllocationInstance& instance);

/// Line-oriented text format:
///   alloc <nL> <nR> <m>
///   cap <v> <C_v>      (one line per right vertex)
///   edge <u> <v>       (m lines)
/// '#' starts a comment; blank lines are ignored. The reader rejects
/// anything else.
AllocationInstance read_instance(std::istream& in);
void write_instance(std::ostream& out, const AllocationInstance& instance);

AllocationInstance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path,
                         const AllocationInstance& instance);

}  // namespace sparsealloc
