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
#include "sparsealloc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sparsealloc/errors.hpp"
#include "sparsealloc/numeric.hpp"

namespace sparsealloc {

AllocationInstance build_instance(int left_count, int right_count,
                                  std::vector<Edge> edges,
                                  std::vector<int> capacities,
                                  std::optional<int> arboricity_hint) {
  if (left_count < 0 || right_count < 0)
    throw MalformedInstance("negative side size");
  if (static_cast<int>(capacities.size()) != right_count)
    throw MalformedInstance("capacity list length must equal right_count");
  for (int r = 0; r < right_count; ++r) {
    if (capacities[r] < 1)
      throw MalformedInstance("capacity of vertex " +
                              std::to_string(left_count + r) +
                              " must be >= 1");
  }
  const int n = left_count + right_count;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= left_count)
      throw MalformedInstance("left endpoint " + std::to_string(e.u) +
                              " out of range");
    if (e.v < left_count || e.v >= n)
      throw MalformedInstance("right endpoint " + std::to_string(e.v) +
                              " out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw MalformedInstance("duplicate edge");

  AllocationInstance inst;
  inst.left_count_ = left_count;
  inst.right_count_ = right_count;
  inst.edges_ = std::move(edges);
  inst.capacities_ = std::move(capacities);
  inst.arboricity_hint_ = arboricity_hint;

  const int m = inst.m();
  inst.left_off_.assign(left_count + 1, 0);
  inst.right_off_.assign(right_count + 1, 0);
  for (const Edge& e : inst.edges_) {
    ++inst.left_off_[e.u + 1];
    ++inst.right_off_[e.v - left_count + 1];
  }
  for (int u = 0; u < left_count; ++u)
    inst.left_off_[u + 1] += inst.left_off_[u];
  for (int r = 0; r < right_count; ++r)
    inst.right_off_[r + 1] += inst.right_off_[r];
  inst.left_adj_.resize(m);
  inst.right_adj_.resize(m);
  std::vector<int> lpos(inst.left_off_.begin(), inst.left_off_.end() - 1);
  std::vector<int> rpos(inst.right_off_.begin(), inst.right_off_.end() - 1);
  for (int e = 0; e < m; ++e) {
    inst.left_adj_[lpos[inst.edges_[e].u]++] = e;
    inst.right_adj_[rpos[inst.edges_[e].v - left_count]++] = e;
  }
  return inst;
}

bool validate_integral(const AllocationInstance& instance,
                       const IntegralAllocation& alloc) {
  std::vector<int> left_deg(instance.left_count(), 0);
  std::vector<int> right_deg(instance.right_count(), 0);
  std::vector<char> seen(instance.m(), 0);
  for (int e : alloc.edge_ids) {
    if (e < 0 || e >= instance.m())
      throw MalformedInstance("edge id " + std::to_string(e) +
                              " out of range");
    if (seen[e]) return false;
    seen[e] = 1;
    const Edge& edge = instance.edge(e);
    if (++left_deg[edge.u] > 1) return false;
    if (++right_deg[instance.right_index(edge.v)] > instance.capacity(edge.v))
      return false;
  }
  return true;
}

std::pair<bool, double> validate_fractional(
    const AllocationInstance& instance, const FractionalAllocation& frac) {
  const int m = instance.m();
  if (static_cast<int>(frac.values.size()) != m) return {false, 0.0};
  for (double x : frac.values) {
    if (!(x >= 0.0) || x > 1.0 + 1e-12) return {false, 0.0};
  }
  bool ok = true;
  for (int u = 0; u < instance.left_count(); ++u) {
    KahanSum sum;
    for (int e : instance.edges_of_left(u)) sum.add(frac.values[e]);
    if (sum.value() > 1.0 + 1e-9) ok = false;
  }
  for (int v = instance.left_count(); v < instance.n(); ++v) {
    KahanSum sum;
    for (int e : instance.edges_of_right(v)) sum.add(frac.values[e]);
    if (sum.value() > instance.capacity(v) * (1.0 + 1e-9)) ok = false;
  }
  KahanSum total;
  for (double x : frac.values) total.add(x);
  const double recomputed = total.value();
  if (std::abs(frac.weight - recomputed) >
      1e-9 * std::max(1.0, std::abs(recomputed)))
    ok = false;
  return {ok, recomputed};
}

int degeneracy(const AllocationInstance& instance) {
  const int n = instance.n();
  if (n == 0) return 0;
  std::vector<int> deg(n);
  int max_deg = 0;
  for (int v = 0; v < n; ++v) {
    deg[v] = instance.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue peeling (Matula-Beck).
  std::vector<std::vector<int>> buckets(max_deg + 1);
  for (int v = 0; v < n; ++v) buckets[deg[v]].push_back(v);
  std::vector<char> removed(n, 0);
  std::vector<int> cur_bucket(n);
  for (int d = 0; d <= max_deg; ++d)
    for (int v : buckets[d]) cur_bucket[v] = d;

  int result = 0;
  int cursor = 0;
  for (int peeled = 0; peeled < n; ++peeled) {
    while (cursor <= max_deg && buckets[cursor].empty()) ++cursor;
    // Lazy deletion can leave stale entries; skip them.
    int v = -1;
    while (cursor <= max_deg) {
      if (buckets[cursor].empty()) {
        ++cursor;
        continue;
      }
      const int cand = buckets[cursor].back();
      buckets[cursor].pop_back();
      if (!removed[cand] && cur_bucket[cand] == cursor) {
        v = cand;
        break;
      }
    }
    if (v < 0) break;
    result = std::max(result, deg[v]);
    removed[v] = 1;
    const auto touch = [&](int w) {
      if (removed[w]) return;
      --deg[w];
      cur_bucket[w] = deg[w];
      buckets[deg[w]].push_back(w);
      cursor = std::min(cursor, deg[w]);
    };
    if (instance.is_left(v)) {
      for (int e : instance.edges_of_left(v)) touch(instance.edge(e).v);
    } else {
      for (int e : instance.edges_of_right(v)) touch(instance.edge(e).u);
    }
  }
  return result;
}

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

AllocationInstance read_instance(std::istream& in) {
  std::string line;
  int nl = -1, nr = -1, m = -1;
  std::vector<int> capacities;
  std::vector<char> cap_seen;
  std::vector<Edge> edges;
  int caps_read = 0;
  int edges_read = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip_comment(line);
    if (blank(body)) continue;
    std::istringstream ss(body);
    std::string tag;
    ss >> tag;
    const auto fail = [&](const std::string& why) {
      throw MalformedInstance("line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "alloc") {
      if (nl >= 0) fail("duplicate header");
      if (!(ss >> nl >> nr >> m) || nl < 0 || nr < 0 || m < 0)
        fail("bad header");
      capacities.assign(nr, 0);
      cap_seen.assign(nr, 0);
      edges.reserve(m);
    } else if (tag == "cap") {
      if (nl < 0) fail("cap before header");
      int v = 0, c = 0;
      if (!(ss >> v >> c)) fail("bad cap line");
      if (v < nl || v >= nl + nr) fail("cap vertex out of range");
      if (cap_seen[v - nl]) fail("duplicate cap line");
      if (c < 1) fail("capacity must be >= 1");
      cap_seen[v - nl] = 1;
      capacities[v - nl] = c;
      ++caps_read;
    } else if (tag == "edge") {
      if (caps_read != nr) fail("edge before all cap lines");
      int u = 0, v = 0;
      if (!(ss >> u >> v)) fail("bad edge line");
      edges.push_back({u, v});
      ++edges_read;
    } else {
      fail("unknown tag '" + tag + "'");
    }
    std::string rest;
    if (ss >> rest) fail("trailing tokens");
  }
  if (nl < 0) throw MalformedInstance("missing 'alloc' header");
  if (caps_read != nr) throw MalformedInstance("expected " +
                                               std::to_string(nr) +
                                               " cap lines");
  if (edges_read != m)
    throw MalformedInstance("expected " + std::to_string(m) + " edge lines");
  return build_instance(nl, nr, std::move(edges), std::move(capacities));
}

void write_instance(std::ostream& out, const AllocationInstance& instance) {
  out << "alloc " << instance.left_count() << ' ' << instance.right_count()
      << ' ' << instance.m() << '\n';
  for (int v = instance.left_count(); v < instance.n(); ++v)
    out << "cap " << v << ' ' << instance.capacity(v) << '\n';
  for (const Edge& e : instance.edges())
    out << "edge " << e.u << ' ' << e.v << '\n';
}

AllocationInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_instance(in);
}

void write_instance_file(const std::string& path,
                         const AllocationInstance& instance) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_instance(out, instance);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace sparsealloc
