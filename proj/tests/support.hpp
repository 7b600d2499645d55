#pragma once

// Shared helpers for the test binaries: random inputs and brute-force
// oracles that do not go through the code under test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "mincca/fpt.hpp"
#include "mincca/graph.hpp"
#include "mincca/problems.hpp"
#include "mincca/treecut.hpp"

namespace mincca::testing {

inline ColoredMultigraph random_connected_graph(std::mt19937_64& rng, int n, int extra, int colors) {
  ColoredMultigraph g(n);
  for (VertexId v = 1; v < n; ++v) {
    g.add_edge(static_cast<VertexId>(rng() % v), v, static_cast<ColorId>(rng() % colors));
  }
  for (int i = 0; i < extra && n > 1; ++i) {
    VertexId u = rng() % n, v = rng() % n;
    if (u != v) g.add_edge(u, v, static_cast<ColorId>(rng() % colors));
  }
  return g;
}

/// Random rooted tree on up to max_nodes nodes with vertices spread over the
/// bags at random; bags may be empty.
inline TreeCutDecomposition random_decomposition(std::mt19937_64& rng, int num_vertices, int max_nodes) {
  TreeCutDecomposition tcd;
  int nodes = 1 + static_cast<int>(rng() % max_nodes);
  for (int t = 0; t < nodes; ++t) tcd.add_node(t == 0 ? kNoNode : static_cast<NodeId>(rng() % t), {});
  for (VertexId v = 0; v < num_vertices; ++v) tcd.bags[rng() % nodes].push_back(v);
  return tcd;
}

// Torso by a direct route: build the contracted multigraph as an edge list
// over labels, then apply the two rules until neither fires.  Returns the
// sorted multiset of surviving edges, each as a sorted label pair where bag
// vertices are labelled by id and contracted vertices by -1 - group.
inline std::multiset<std::pair<int, int>> naive_torso(const ColoredMultigraph& g,
                                                     const std::vector<VertexId>& bag,
                                                     const std::vector<std::vector<VertexId>>& groups,
                                                     std::size_t* size_out = nullptr) {
  std::map<VertexId, int> label;
  for (VertexId v : bag) label[v] = v;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (VertexId v : groups[i]) label[v] = -1 - static_cast<int>(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) {
    int a = label.at(e.u), b = label.at(e.v);
    if (a != b) edges.emplace_back(a, b);
  }
  std::set<int> alive(bag.begin(), bag.end());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].empty()) alive.insert(-1 - static_cast<int>(i));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int x : alive) {
      if (x >= 0) continue;
      std::vector<std::size_t> inc;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (edges[j].first == x || edges[j].second == x) inc.push_back(j);
      }
      auto other = [&](std::size_t j) { return edges[j].first == x ? edges[j].second : edges[j].first; };
      if (inc.size() <= 1) {
        for (auto it = inc.rbegin(); it != inc.rend(); ++it) edges.erase(edges.begin() + *it);
        alive.erase(x);
        changed = true;
        break;
      }
      if (inc.size() == 2 && other(inc[0]) != other(inc[1])) {
        std::pair<int, int> joined{other(inc[0]), other(inc[1])};
        edges.erase(edges.begin() + inc[1]);
        edges.erase(edges.begin() + inc[0]);
        edges.push_back(joined);
        alive.erase(x);
        changed = true;
        break;
      }
    }
  }
  if (size_out) *size_out = alive.size();
  std::multiset<std::pair<int, int>> out;
  for (auto [a, b] : edges) out.insert({std::min(a, b), std::max(a, b)});
  return out;
}

/// Per-node brute force over good forests.  Every vertex of Y_t picks a
/// parent edge among its incident edges (or none when it leaves through an
/// outward cut edge); the result must match Φ, be acyclic, give every vertex
/// of Y_t a path to an outward exit, and charge only changeovers at Y_t.
/// Returns the minimum cost per (Φ, φ) key over all realizations.
inline std::map<std::pair<PartialOrientation, BoundaryPartition>, Cost> brute_node_table(
    const Instance& in, const DecompositionIndex& index, NodeId t) {
  const auto& g = in.graph;
  const auto& y = index.subtree_vertices(t);
  const auto& cut = index.cut(t);
  std::set<VertexId> inside(y.begin(), y.end());
  std::map<std::pair<PartialOrientation, BoundaryPartition>, Cost> best;

  std::vector<std::vector<EdgeId>> options(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (EdgeId id : g.incident(y[i])) options[i].push_back(id);
  }
  // Outside endpoints of inward cut edges pick them as parent edge too.
  std::vector<EdgeId> parent_of(g.num_vertices(), kNoEdge);

  std::function<void(std::size_t)> rec_inside;
  std::function<void(std::size_t)> rec_cut;

  // Step 2: every cut edge is absent, outward (its inside endpoint points out)
  // or inward (its outside endpoint points in); each vertex has one parent.
  std::vector<EdgeState> states(cut.size(), EdgeState::absent);
  rec_cut = [&](std::size_t i) {
    if (i < cut.size()) {
      const Edge& e = g.edge(cut[i]);
      VertexId in_v = inside.count(e.u) ? e.u : e.v;
      VertexId out_v = e.other(in_v);
      states[i] = EdgeState::absent;
      if (parent_of[in_v] != cut[i]) rec_cut(i + 1);
      if (parent_of[in_v] == cut[i]) {
        states[i] = EdgeState::outward;
        rec_cut(i + 1);
      }
      if (parent_of[out_v] == kNoEdge && parent_of[in_v] != cut[i]) {
        parent_of[out_v] = cut[i];
        states[i] = EdgeState::inward;
        rec_cut(i + 1);
        parent_of[out_v] = kNoEdge;
      }
      return;
    }
    // Acyclic inside, and every inside vertex reaches an outward exit.
    std::map<VertexId, VertexId> exit_of;
    for (VertexId v : y) {
      std::vector<VertexId> path;
      VertexId cur = v;
      for (;;) {
        if (std::find(path.begin(), path.end(), cur) != path.end()) return;
        path.push_back(cur);
        EdgeId pe = parent_of[cur];
        VertexId up = g.edge(pe).other(cur);
        if (!inside.count(up)) break;
        cur = up;
      }
      exit_of[v] = path.back();
    }
    Cost cost = 0;
    auto colour = [&](VertexId v) { return g.edge(parent_of[v]).color; };
    for (VertexId v : y) {
      VertexId up = g.edge(parent_of[v]).other(v);
      if (inside.count(up)) cost += in.costs.cost(colour(up), colour(v));
    }
    BoundaryPartition part;
    for (std::size_t i = 0; i < cut.size(); ++i) {
      if (states[i] != EdgeState::inward) continue;
      const Edge& e = g.edge(cut[i]);
      VertexId in_v = inside.count(e.u) ? e.u : e.v;
      cost += in.costs.cost(colour(in_v), e.color);
      part.emplace_back(in_v, exit_of.at(in_v));
    }
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());
    auto key = std::make_pair(PartialOrientation(states), part);
    auto it = best.find(key);
    if (it == best.end() || cost < it->second) best[key] = cost;
  };

  // Step 1: parent edges of the inside vertices.
  rec_inside = [&](std::size_t i) {
    if (i == y.size()) {
      rec_cut(0);
      return;
    }
    for (EdgeId id : options[i]) {
      parent_of[y[i]] = id;
      rec_inside(i + 1);
    }
    parent_of[y[i]] = kNoEdge;
  };
  rec_inside(0);
  return best;
}

/// Component-count test for a good forest restricted to Y_t: adding one
/// virtual sink joined to every outward exit must leave a single tree, i.e.
/// components of (Y_t + sink, parent edges + sink edges) == 1 and the edge
/// count equals |Y_t|.  Equivalent to the acyclic-and-reaches-exit check.
inline bool good_by_components(const std::vector<VertexId>& y, const std::map<VertexId, VertexId>& up) {
  // up[v] = parent vertex inside Y_t, or -1 when v leaves Y_t.
  std::map<VertexId, VertexId> dsu;
  const VertexId sink = -2;
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    auto it = dsu.find(v);
    if (it == dsu.end() || it->second == v) {
      dsu[v] = v;
      return v;
    }
    return it->second = find(it->second);
  };
  find(sink);
  for (VertexId v : y) find(v);
  for (VertexId v : y) {
    VertexId p = up.at(v) < 0 ? sink : up.at(v);
    VertexId a = find(v), b = find(p);
    if (a == b) return false;  // cycle
    dsu[a] = b;
  }
  std::set<VertexId> roots;
  for (VertexId v : y) roots.insert(find(v));
  roots.insert(find(sink));
  return roots.size() == 1;
}

/// Every formula over n = 1..3 variables made of one to three distinct
/// monotone clauses, a clause being a nonempty variable set with a sign:
/// 3 + 41 + 469 = 513 formulas.
inline std::vector<MonotoneCnf> monotone_cnf_suite() {
  std::vector<MonotoneCnf> out;
  for (int n = 1; n <= 3; ++n) {
    std::vector<MonotoneClause> kinds;
    for (bool positive : {true, false}) {
      for (int mask = 1; mask < (1 << n); ++mask) {
        MonotoneClause c{positive, {}};
        for (int v = 0; v < n; ++v) {
          if (mask >> v & 1) c.vars.push_back(v);
        }
        kinds.push_back(c);
      }
    }
    const std::size_t m = kinds.size();
    for (std::size_t a = 0; a < m; ++a) {
      out.push_back({n, {kinds[a]}});
      for (std::size_t b = a + 1; b < m; ++b) {
        out.push_back({n, {kinds[a], kinds[b]}});
        for (std::size_t c = b + 1; c < m; ++c) out.push_back({n, {kinds[a], kinds[b], kinds[c]}});
      }
    }
  }
  return out;
}

/// All 2^|cross| edge subsets of a k-class, n-per-class clique input.
inline std::vector<std::pair<int, int>> cross_pairs(const CliqueInstance& shape) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < shape.num_vertices(); ++u) {
    for (int v = u + 1; v < shape.num_vertices(); ++v) {
      if (shape.class_of(u) != shape.class_of(v)) out.emplace_back(u, v);
    }
  }
  return out;
}

inline CliqueInstance clique_from_mask(int k, int n, std::uint64_t mask) {
  CliqueInstance ci{k, n, {}};
  auto pairs = cross_pairs(ci);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1) ci.add_edge(pairs[i].first, pairs[i].second);
  }
  return ci;
}

inline std::multiset<std::pair<int, int>> torso_edges(const Torso& t) {
  // Bag vertices by id, contracted ones by -1 - index, matching naive_torso.
  auto name = [&](int i) {
    const auto& v = t.vertices[i];
    return v.contracted ? -1 - v.id : v.id;
  };
  std::multiset<std::pair<int, int>> out;
  for (auto [a, b] : t.edges) out.insert({std::min(name(a), name(b)), std::max(name(a), name(b))});
  return out;
}

// Which contracted vertex survives a suppression chain depends on the rule
// order, so compare up to renaming of contracted labels.
inline std::multiset<std::pair<int, int>> canonical(const std::multiset<std::pair<int, int>>& edges) {
  std::set<int> labels;
  for (auto [a, b] : edges) {
    if (a < 0) labels.insert(a);
    if (b < 0) labels.insert(b);
  }
  std::vector<int> from(labels.begin(), labels.end()), to(from.size());
  for (std::size_t i = 0; i < to.size(); ++i) to[i] = -1 - static_cast<int>(to.size() - 1 - i);
  std::multiset<std::pair<int, int>> best;
  bool first = true;
  do {
    std::multiset<std::pair<int, int>> renamed;
    for (auto [a, b] : edges) {
      auto map = [&](int x) {
        if (x >= 0) return x;
        return to[std::lower_bound(from.begin(), from.end(), x) - from.begin()];
      };
      int x = map(a), y = map(b);
      renamed.insert({std::min(x, y), std::max(x, y)});
    }
    if (first || renamed < best) best = renamed;
    first = false;
  } while (std::next_permutation(to.begin(), to.end()));
  return best;
}

}  // namespace mincca::testing
