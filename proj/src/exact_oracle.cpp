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
#include "sparsealloc/exact_oracle.hpp"

#include <algorithm>
#include <queue>

#include "sparsealloc/errors.hpp"

namespace sparsealloc {

namespace {

struct Dinic {
  struct Arc {
    int to;
    int rev;
    int cap;
  };
  std::vector<std::vector<Arc>> g;
  std::vector<int> level, it;

  explicit Dinic(int n) : g(n), level(n), it(n) {}

  int add_arc(int from, int to, int cap) {
    g[from].push_back({to, static_cast<int>(g[to].size()), cap});
    g[to].push_back({from, static_cast<int>(g[from].size()) - 1, 0});
    return static_cast<int>(g[from].size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (const Arc& a : g[v]) {
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[v]; i < static_cast<int>(g[v].size()); ++i) {
      Arc& a = g[v][i];
      if (a.cap > 0 && level[v] < level[a.to]) {
        const int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          g[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      while (const int f = dfs(s, t, 1 << 30)) flow += f;
    }
    return flow;
  }
};

}  // namespace

OracleResult opt_flow(const AllocationInstance& instance) {
  const int nl = instance.left_count();
  const int n = instance.n();
  const int source = n;
  const int sink = n + 1;
  Dinic dinic(n + 2);
  for (int u = 0; u < nl; ++u) dinic.add_arc(source, u, 1);
  std::vector<std::pair<int, int>> middle(instance.m());  // (from, arc index)
  for (int e = 0; e < instance.m(); ++e) {
    const Edge& edge = instance.edge(e);
    middle[e] = {edge.u, dinic.add_arc(edge.u, edge.v, 1)};
  }
  for (int v = nl; v < n; ++v)
    dinic.add_arc(v, sink, instance.capacity(v));

  OracleResult result;
  result.opt_size = dinic.max_flow(source, sink);
  for (int e = 0; e < instance.m(); ++e) {
    const auto [from, idx] = middle[e];
    if (dinic.g[from][idx].cap == 0) result.witness.edge_ids.push_back(e);
  }
  return result;
}

int opt_brute(const AllocationInstance& instance) {
  const int m = instance.m();
  if (m > 24) throw TooLarge("opt_brute is limited to m <= 24");
  std::vector<int> left_deg(instance.left_count(), 0);
  std::vector<int> right_left(instance.right_count(), 0);
  for (int r = 0; r < instance.right_count(); ++r)
    right_left[r] = instance.capacity(instance.left_count() + r);
  int best = 0;
  // Include/exclude recursion with a remaining-edges cut.
  const auto rec = [&](auto&& self, int e, int chosen) -> void {
    if (chosen + (m - e) <= best) return;
    if (e == m) {
      best = std::max(best, chosen);
      return;
    }
    const Edge& edge = instance.edge(e);
    const int r = instance.right_index(edge.v);
    if (left_deg[edge.u] == 0 && right_left[r] > 0) {
      left_deg[edge.u] = 1;
      --right_left[r];
      self(self, e + 1, chosen + 1);
      left_deg[edge.u] = 0;
      ++right_left[r];
    }
    self(self, e + 1, chosen);
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace sparsealloc
