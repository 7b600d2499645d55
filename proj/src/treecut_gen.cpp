#include "mincca/treecut_gen.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <tuple>

#include "mincca/error.hpp"

namespace mincca {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, static_cast<int>(items.size()) - 1)];
}

struct Skeleton {
  std::vector<std::pair<VertexId, VertexId>> pairs;  // edges of a star forest on the bag
};

// Random star forest on `bag`: some vertices become centres, the others
// join one centre or stay isolated.
Skeleton make_skeleton(Rng& rng, const std::vector<VertexId>& bag, bool force_connected) {
  Skeleton s;
  if (bag.size() < 2) return s;
  std::vector<VertexId> order = bag;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<VertexId> centres{order.front()};
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (!force_connected && chance(rng, 0.25)) {
      centres.push_back(order[i]);
    } else if (!force_connected && chance(rng, 0.15)) {
      // isolated in the skeleton
    } else {
      s.pairs.emplace_back(pick(rng, centres), order[i]);
    }
  }
  return s;
}

struct Draft {
  int num_vertices = 0;
  std::vector<NodeId> parent;
  std::vector<std::vector<VertexId>> bags;
  std::vector<char> bold;
};

Draft draft_random(Rng& rng, const GenParams& p) {
  Draft d;
  int n = uniform(rng, std::max(2, p.max_vertices - 3), std::max(2, p.max_vertices));
  int nodes = uniform(rng, 1, std::max(1, std::min(p.max_nodes, n)));
  d.parent.assign(nodes, kNoNode);
  for (NodeId t = 1; t < nodes; ++t) d.parent[t] = uniform(rng, 0, t - 1);
  std::vector<char> leaf(nodes, 1);
  for (NodeId t = 1; t < nodes; ++t) leaf[d.parent[t]] = 0;

  // Root and leaves need a vertex; other bags may stay empty.
  std::vector<int> size(nodes, 0);
  int used = 0;
  for (NodeId t = 0; t < nodes; ++t) {
    bool may_be_empty = t != 0 && !leaf[t] && chance(rng, p.empty_bag_probability);
    if (!may_be_empty && used < n) {
      size[t] = 1;
      ++used;
    }
  }
  while (used < n) {
    ++size[uniform(rng, 0, nodes - 1)];
    ++used;
  }
  d.num_vertices = n;
  d.bags.assign(nodes, {});
  VertexId next = 0;
  for (NodeId t = 0; t < nodes; ++t) {
    for (int i = 0; i < size[t]; ++i) d.bags[t].push_back(next++);
  }
  d.bold.assign(nodes, 0);
  for (NodeId t = 1; t < nodes; ++t) d.bold[t] = chance(rng, p.bold_probability);
  return d;
}

Draft draft_single(const GenParams& p) {
  Draft d;
  d.num_vertices = std::max(1, p.bag_size);
  d.parent = {kNoNode};
  d.bags = {{}};
  for (VertexId v = 0; v < d.num_vertices; ++v) d.bags[0].push_back(v);
  d.bold = {0};
  return d;
}

Draft draft_centre(const GenParams& p) {
  Draft d = draft_single(p);
  for (int i = 0; i < p.num_leaves; ++i) {
    d.parent.push_back(0);
    d.bags.push_back({d.num_vertices++});
    d.bold.push_back(0);
  }
  return d;
}

std::optional<GeneratedInstance> attempt(Rng& rng, const GenParams& p) {
  Draft d;
  switch (p.shape) {
    case GenParams::Shape::random: d = draft_random(rng, p); break;
    case GenParams::Shape::single_node: d = draft_single(p); break;
    case GenParams::Shape::centre_leaves: d = draft_centre(p); break;
  }
  const int nodes = static_cast<int>(d.parent.size());

  TreeCutDecomposition tcd;
  tcd.parent = d.parent;
  tcd.bags = d.bags;
  const ColoredMultigraph bare(d.num_vertices);
  DecompositionIndex shape_only(bare, tcd);

  const int colors = std::max(1, p.num_colors);
  auto colour = [&] { return uniform(rng, 0, colors - 1); };
  std::vector<std::tuple<VertexId, VertexId, ColorId>> edges;
  auto add = [&](VertexId a, VertexId b) { edges.emplace_back(a, b, colour()); };

  std::vector<Skeleton> skeleton(nodes);
  for (NodeId t = 0; t < nodes; ++t) {
    bool single = p.shape == GenParams::Shape::single_node;
    skeleton[t] = make_skeleton(rng, d.bags[t], single);
    for (auto [a, b] : skeleton[t].pairs) {
      if (!single && chance(rng, 0.3)) continue;  // the pair may carry red edges only
      add(a, b);
      if (chance(rng, 0.2)) add(a, b);
    }
  }

  for (NodeId t = 0; t < nodes; ++t) {
    NodeId par = d.parent[t];
    if (par == kNoNode) continue;
    const auto& inside = shape_only.subtree_vertices(t);
    std::vector<VertexId> pool = d.bags[par];
    if (pool.empty()) {
      for (VertexId v = 0; v < d.num_vertices; ++v) {
        if (!shape_only.in_subtree(par, v)) pool.push_back(v);
      }
    }
    if (pool.empty()) return std::nullopt;

    if (d.bold[t]) {
      std::vector<NodeId> bold_siblings;
      for (NodeId s : shape_only.children(par)) {
        if (s != t && d.bold[s]) bold_siblings.push_back(s);
      }
      int count = uniform(rng, 3, 4);
      for (int i = 0; i < count; ++i) {
        VertexId a = pick(rng, inside);
        if (!bold_siblings.empty() && chance(rng, 0.3)) {
          add(a, pick(rng, shape_only.subtree_vertices(pick(rng, bold_siblings))));
        } else {
          add(a, pick(rng, pool));
        }
      }
      continue;
    }

    const auto& pairs = skeleton[par].pairs;
    int mode = !pairs.empty() && chance(rng, 0.5) ? 2 : uniform(rng, 0, 1);
    if (mode == 0) {
      add(pick(rng, inside), pick(rng, pool));
    } else if (mode == 1) {
      VertexId x = pick(rng, pool);
      add(pick(rng, inside), x);
      add(pick(rng, inside), x);
    } else {
      auto [a, b] = pick(rng, pairs);
      add(pick(rng, inside), a);
      add(pick(rng, inside), b);
    }
  }

  GeneratedInstance out;
  out.instance.graph = ColoredMultigraph(d.num_vertices);
  for (auto [a, b, c] : edges) out.instance.graph.add_edge(a, b, c);
  out.instance.costs = CostModel(colors, p.symmetric);
  for (ColorId a = 0; a < colors; ++a) {
    for (ColorId b = 0; b < colors; ++b) {
      if (a == b || (p.symmetric && b < a)) continue;
      out.instance.costs.set(a, b, std::uniform_int_distribution<Cost>(0, p.max_cost)(rng));
    }
  }
  out.instance.root = pick(rng, d.bags[0]);
  out.decomposition = tcd;

  const auto& g = out.instance.graph;
  if (!g.connected()) return std::nullopt;
  if (!is_nice(g, tcd).nice) return std::nullopt;
  if (!is_star_decomposition(g, tcd).star) return std::nullopt;
  return out;
}

}  // namespace

GeneratedInstance gen_graph_with_decomposition(const GenParams& params, std::uint64_t seed) {
  if (params.max_vertices < 1 || params.num_colors < 1 || params.bag_size < 1 ||
      params.num_leaves < 0 || params.max_nodes < 1) {
    throw PreconditionError("infeasible generator params");
  }
  Rng rng(seed);
  for (int i = 0; i < params.max_attempts; ++i) {
    if (auto out = attempt(rng, params)) return std::move(*out);
  }
  throw PreconditionError("infeasible generator params: no valid instance after " +
                          std::to_string(params.max_attempts) + " attempts");
}

}  // namespace mincca
