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
#include "sparsealloc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "sparsealloc/errors.hpp"
#include "sparsealloc/rng.hpp"

namespace sparsealloc {

namespace {

std::vector<int> capacities_for(const GenSpec& spec,
                                const std::vector<Edge>& edges, Rng rng) {
  const int nl = spec.left_count;
  const int nr = spec.right_count;
  std::vector<int> caps(nr, 1);
  switch (spec.capacity_rule) {
    case CapacityRule::all_one:
      break;
    case CapacityRule::uniform_random:
      for (int r = 0; r < nr; ++r)
        caps[r] = 1 + static_cast<int>(rng.below(
                          static_cast<std::uint64_t>(spec.capacity_max)));
      break;
    case CapacityRule::degree_proportional: {
      std::vector<int> deg(nr, 0);
      for (const Edge& e : edges) ++deg[e.v - nl];
      for (int r = 0; r < nr; ++r) caps[r] = std::max(1, (deg[r] + 1) / 2);
      break;
    }
  }
  return caps;
}

void shuffle_ids(std::vector<int>& ids, Rng& rng) {
  for (int i = static_cast<int>(ids.size()) - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(ids[i], ids[j]);
  }
}

}  // namespace

AllocationInstance gen_forest_union(const GenSpec& spec,
                                    bool* degenerate_warning) {
  if (spec.kind != GenKind::forest_union)
    throw InvalidConfig("spec kind must be forest_union");
  if (spec.lambda < 1) throw InvalidConfig("lambda must be >= 1");
  if (spec.left_count < 1 || spec.right_count < 1)
    throw InvalidConfig("both sides must be nonempty");
  if (degenerate_warning != nullptr)
    *degenerate_warning =
        spec.lambda >= std::min(spec.left_count, spec.right_count);

  Rng rng(spec.seed);
  const int nl = spec.left_count;
  const int n = nl + spec.right_count;
  std::set<Edge> edge_set;
  std::vector<int> order(n);
  std::vector<int> placed_left, placed_right;
  for (int layer = 0; layer < spec.lambda; ++layer) {
    Rng layer_rng = rng.fork(static_cast<std::uint64_t>(layer));
    for (int v = 0; v < n; ++v) order[v] = v;
    shuffle_ids(order, layer_rng);
    placed_left.clear();
    placed_right.clear();
    for (int v : order) {
      const bool left = v < nl;
      auto& anchors = left ? placed_right : placed_left;
      if (!anchors.empty()) {
        const int a = anchors[layer_rng.below(anchors.size())];
        edge_set.insert(left ? Edge{v, a} : Edge{a, v});
      }
      (left ? placed_left : placed_right).push_back(v);
    }
  }
  std::vector<Edge> edges(edge_set.begin(), edge_set.end());
  auto caps = capacities_for(spec, edges, rng.fork(0xCA9));
  auto inst = build_instance(nl, spec.right_count, std::move(edges),
                             std::move(caps), spec.lambda);
  return inst;
}

AllocationInstance gen_star(int leaf_count, int center_capacity) {
  if (leaf_count < 1 || center_capacity < 1)
    throw InvalidConfig("star needs leaf_count >= 1 and capacity >= 1");
  std::vector<Edge> edges;
  edges.reserve(leaf_count);
  for (int u = 0; u < leaf_count; ++u) edges.push_back({u, leaf_count});
  return build_instance(leaf_count, 1, std::move(edges), {center_capacity},
                        1);
}

AllocationInstance gen_random_bipartite(const GenSpec& spec) {
  if (spec.kind != GenKind::random_bipartite)
    throw InvalidConfig("spec kind must be random_bipartite");
  if (spec.left_count < 1 || spec.right_count < 1)
    throw InvalidConfig("both sides must be nonempty");
  if (spec.edge_prob.has_value() == spec.target_m.has_value())
    throw InvalidConfig("give exactly one of edge_prob and target_m");

  Rng rng(spec.seed);
  const int nl = spec.left_count;
  const int nr = spec.right_count;
  std::vector<Edge> edges;
  if (spec.edge_prob) {
    const double p = *spec.edge_prob;
    if (p < 0.0 || p > 1.0) throw InvalidConfig("edge_prob must be in [0,1]");
    for (int u = 0; u < nl; ++u)
      for (int r = 0; r < nr; ++r)
        if (rng.unit() < p) edges.push_back({u, nl + r});
  } else {
    const std::int64_t total = static_cast<std::int64_t>(nl) * nr;
    const int want = *spec.target_m;
    if (want < 0 || want > total)
      throw InvalidConfig("target_m out of range");
    // Floyd's sampling without replacement over pair indices.
    std::set<std::int64_t> chosen;
    for (std::int64_t j = total - want; j < total; ++j) {
      std::int64_t t = static_cast<std::int64_t>(
          rng.below(static_cast<std::uint64_t>(j) + 1));
      if (!chosen.insert(t).second) chosen.insert(j);
    }
    for (std::int64_t idx : chosen)
      edges.push_back({static_cast<int>(idx / nr),
                       nl + static_cast<int>(idx % nr)});
  }
  auto caps = capacities_for(spec, edges, rng.fork(0xCA9));
  auto inst = build_instance(nl, nr, std::move(edges), std::move(caps));
  inst.set_arboricity_hint(std::max(1, degeneracy(inst)));
  return inst;
}

AllocationInstance generate(const GenSpec& spec, bool* degenerate_warning) {
  if (degenerate_warning != nullptr) *degenerate_warning = false;
  switch (spec.kind) {
    case GenKind::forest_union:
      return gen_forest_union(spec, degenerate_warning);
    case GenKind::star:
      return gen_star(spec.left_count, spec.capacity_max);
    case GenKind::random_bipartite:
      return gen_random_bipartite(spec);
  }
  throw InvalidConfig("unknown generator kind");
}

GenSpec parse_gen_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidConfig("generator spec must look like kind:key=value,...");
  const std::string kind = text.substr(0, colon);
  GenSpec spec;
  if (kind == "forest") {
    spec.kind = GenKind::forest_union;
  } else if (kind == "star") {
    spec.kind = GenKind::star;
  } else if (kind == "random") {
    spec.kind = GenKind::random_bipartite;
  } else {
    throw InvalidConfig("unknown generator kind '" + kind + "'");
  }

  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  const auto to_int = [](const std::string& key, const std::string& v) {
    try {
      size_t used = 0;
      const int x = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw InvalidConfig("bad integer for '" + key + "': " + v);
    }
  };
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "nl") {
      spec.left_count = to_int(key, value);
    } else if (key == "nr") {
      spec.right_count = to_int(key, value);
    } else if (key == "lambda") {
      spec.lambda = to_int(key, value);
    } else if (key == "leaves") {
      spec.left_count = to_int(key, value);
    } else if (key == "p") {
      try {
        spec.edge_prob = std::stod(value);
      } catch (const std::exception&) {
        throw InvalidConfig("bad real for 'p': " + value);
      }
    } else if (key == "m") {
      spec.target_m = to_int(key, value);
    } else if (key == "seed") {
      try {
        spec.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw InvalidConfig("bad seed: " + value);
      }
    } else if (key == "cap") {
      if (value == "one") {
        spec.capacity_rule = CapacityRule::all_one;
      } else if (value == "degprop") {
        spec.capacity_rule = CapacityRule::degree_proportional;
      } else if (value.rfind("uniform:", 0) == 0) {
        spec.capacity_rule = CapacityRule::uniform_random;
        spec.capacity_max = to_int(key, value.substr(8));
      } else if (spec.kind == GenKind::star) {
        spec.capacity_max = to_int(key, value);
      } else {
        throw InvalidConfig("bad capacity rule '" + value + "'");
      }
    } else {
      throw InvalidConfig("unknown generator key '" + key + "'");
    }
  }
  if (spec.kind == GenKind::star) {
    if (spec.left_count < 1) throw InvalidConfig("star needs leaves=...");
  } else if (spec.left_count < 1 || spec.right_count < 1) {
    throw InvalidConfig("generator needs nl=... and nr=...");
  }
  return spec;
}

}  // namespace sparsealloc
