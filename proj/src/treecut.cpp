#include "mincca/treecut.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "mincca/error.hpp"

namespace mincca {

NodeId TreeCutDecomposition::add_node(NodeId parent_node, std::vector<VertexId> bag) {
  parent.push_back(parent_node);
  bags.push_back(std::move(bag));
  return num_nodes() - 1;
}

NodeId TreeCutDecomposition::root() const {
  NodeId found = kNoNode;
  for (NodeId t = 0; t < num_nodes(); ++t) {
    if (parent[t] != kNoNode) continue;
    if (found != kNoNode) throw StructureError("decomposition has several roots");
    found = t;
  }
  if (found == kNoNode) throw StructureError("decomposition has no root");
  return found;
}

std::vector<NodeId> TreeCutDecomposition::children(NodeId t) const {
  std::vector<NodeId> out;
  for (NodeId c = 0; c < num_nodes(); ++c) {
    if (parent[c] == t) out.push_back(c);
  }
  return out;
}

DecompositionReport validate_decomposition(const ColoredMultigraph& g,
                                           const TreeCutDecomposition& tcd) {
  DecompositionReport report;
  const int nodes = tcd.num_nodes();
  if (static_cast<int>(tcd.bags.size()) != nodes) {
    report.tree = false;
    report.problems.push_back("bag count differs from node count");
    return report;
  }
  int roots = 0;
  for (NodeId t = 0; t < nodes; ++t) {
    NodeId p = tcd.parent[t];
    if (p == kNoNode) {
      ++roots;
    } else if (p < 0 || p >= nodes || p == t) {
      report.tree = false;
      report.problems.push_back("node " + std::to_string(t) + " has invalid parent");
    }
  }
  if (roots != 1) {
    report.tree = false;
    report.problems.push_back("expected exactly one root, found " + std::to_string(roots));
  }
  if (report.tree) {
    // Every node must reach the root without revisiting a node.
    for (NodeId t = 0; t < nodes; ++t) {
      NodeId cur = t;
      int steps = 0;
      while (cur != kNoNode && steps <= nodes) {
        cur = tcd.parent[cur];
        ++steps;
      }
      if (cur != kNoNode) {
        report.tree = false;
        report.problems.push_back("parent links of node " + std::to_string(t) + " form a cycle");
        break;
      }
    }
  }

  std::vector<NodeId> owner(g.num_vertices(), kNoNode);
  for (NodeId t = 0; t < nodes; ++t) {
    for (VertexId v : tcd.bags[t]) {
      if (!g.has_vertex(v)) {
        report.disjoint = false;
        report.problems.push_back("bag of node " + std::to_string(t) + " has unknown vertex " +
                                  std::to_string(v));
        continue;
      }
      if (owner[v] != kNoNode) {
        report.disjoint = false;
        report.problems.push_back("vertex " + std::to_string(v) + " is in bags of nodes " +
                                  std::to_string(owner[v]) + " and " + std::to_string(t));
      }
      owner[v] = t;
    }
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (owner[v] == kNoNode) {
      report.covering = false;
      report.problems.push_back("vertex " + std::to_string(v) + " is in no bag");
    }
  }
  return report;
}

DecompositionIndex::DecompositionIndex(const ColoredMultigraph& g, const TreeCutDecomposition& tcd)
    : g_(&g), tcd_(&tcd) {
  auto report = validate_decomposition(g, tcd);
  if (!report.ok()) {
    std::ostringstream os;
    os << "invalid tree-cut decomposition";
    for (const auto& p : report.problems) os << "; " << p;
    throw StructureError(os.str());
  }
  const int nodes = tcd.num_nodes();
  root_ = tcd.root();
  owner_.assign(g.num_vertices(), kNoNode);
  for (NodeId t = 0; t < nodes; ++t) {
    for (VertexId v : tcd.bags[t]) owner_[v] = t;
  }
  children_.assign(nodes, {});
  for (NodeId t = 0; t < nodes; ++t) {
    if (tcd.parent[t] != kNoNode) children_[tcd.parent[t]].push_back(t);
  }

  // Iterative DFS to get a postorder.
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto& [t, next] = stack.back();
    if (next < children_[t].size()) {
      NodeId c = children_[t][next++];
      stack.emplace_back(c, 0);
    } else {
      postorder_.push_back(t);
      stack.pop_back();
    }
  }

  member_.assign(nodes, std::vector<char>(g.num_vertices(), 0));
  subtree_.assign(nodes, {});
  for (NodeId t : postorder_) {
    for (VertexId v : tcd.bags[t]) member_[t][v] = 1;
    for (NodeId c : children_[t]) {
      for (VertexId v = 0; v < g.num_vertices(); ++v) member_[t][v] |= member_[c][v];
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (member_[t][v]) subtree_[t].push_back(v);
    }
  }
  cut_.assign(nodes, {});
  for (NodeId t = 0; t < nodes; ++t) {
    for (const auto& e : g.edges()) {
      if (member_[t][e.u] != member_[t][e.v]) cut_[t].push_back(e.id);
    }
  }
}

void DecompositionIndex::check_node(NodeId t) const {
  if (t < 0 || t >= tcd_->num_nodes()) throw StructureError("unknown node " + std::to_string(t));
}

bool DecompositionIndex::in_subtree(NodeId t, VertexId v) const {
  return member_.at(t).at(v) != 0;
}

bool DecompositionIndex::is_thin(NodeId t) const {
  return t != root_ && cut_.at(t).size() <= 2;
}

std::vector<VertexId> DecompositionIndex::neighborhood(NodeId t) const {
  std::set<VertexId> out;
  for (EdgeId id : cut_.at(t)) {
    const Edge& e = g_->edge(id);
    out.insert(in_subtree(t, e.u) ? e.v : e.u);
  }
  return {out.begin(), out.end()};
}

int adhesion(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t) {
  DecompositionIndex index(g, tcd);
  index.check_node(t);
  return static_cast<int>(index.cut(t).size());
}

Torso torso_of_sets(const ColoredMultigraph& g, const std::vector<VertexId>& bag,
                    const std::vector<std::vector<VertexId>>& groups,
                    std::optional<std::uint64_t> order_seed) {
  // Label vertices: bag vertices first, then one label per non-empty group.
  std::vector<int> label(g.num_vertices(), -1);
  std::vector<TorsoVertex> vertices;
  for (VertexId v : bag) {
    label[v] = static_cast<int>(vertices.size());
    vertices.push_back({false, v});
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) continue;
    int l = static_cast<int>(vertices.size());
    vertices.push_back({true, static_cast<int>(i)});
    for (VertexId v : groups[i]) label[v] = l;
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (label[v] < 0) throw StructureError("torso sets do not cover the graph");
  }

  std::vector<std::pair<int, int>> edges;
  for (const auto& e : g.edges()) {
    if (label[e.u] != label[e.v]) edges.emplace_back(label[e.u], label[e.v]);
  }
  std::vector<char> alive_vertex(vertices.size(), 1);
  std::vector<char> alive_edge(edges.size(), 1);

  std::optional<std::mt19937_64> rng;
  if (order_seed) rng.emplace(*order_seed);

  for (;;) {
    std::vector<int> degree(vertices.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive_edge[i]) continue;
      ++degree[edges[i].first];
      ++degree[edges[i].second];
    }
    std::vector<int> candidates;
    for (std::size_t x = 0; x < vertices.size(); ++x) {
      if (!alive_vertex[x] || !vertices[x].contracted) continue;
      if (degree[x] <= 1) {
        candidates.push_back(static_cast<int>(x));
      } else if (degree[x] == 2) {
        std::vector<int> nbrs;
        for (std::size_t i = 0; i < edges.size(); ++i) {
          if (!alive_edge[i]) continue;
          if (edges[i].first == static_cast<int>(x)) nbrs.push_back(edges[i].second);
          if (edges[i].second == static_cast<int>(x)) nbrs.push_back(edges[i].first);
        }
        if (nbrs[0] != nbrs[1]) candidates.push_back(static_cast<int>(x));
      }
    }
    if (candidates.empty()) break;
    int x = candidates.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      x = candidates[pick(*rng)];
    }
    std::vector<int> nbrs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!alive_edge[i]) continue;
      if (edges[i].first == x || edges[i].second == x) {
        nbrs.push_back(edges[i].first == x ? edges[i].second : edges[i].first);
        alive_edge[i] = 0;
      }
    }
    alive_vertex[x] = 0;
    if (nbrs.size() == 2) {
      edges.emplace_back(nbrs[0], nbrs[1]);
      alive_edge.push_back(1);
    }
  }

  Torso out;
  std::vector<int> remap(vertices.size(), -1);
  for (std::size_t x = 0; x < vertices.size(); ++x) {
    if (!alive_vertex[x]) continue;
    remap[x] = out.size();
    out.vertices.push_back(vertices[x]);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!alive_edge[i]) continue;
    auto [a, b] = edges[i];
    a = remap[a];
    b = remap[b];
    out.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

Torso torso_at(const DecompositionIndex& index, NodeId t, std::optional<std::uint64_t> seed) {
  const auto& g = index.graph();
  std::vector<std::vector<VertexId>> groups(1);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!index.in_subtree(t, v)) groups[0].push_back(v);
  }
  for (NodeId c : index.children(t)) groups.push_back(index.subtree_vertices(c));
  std::vector<VertexId> bag = index.bag(t);
  std::sort(bag.begin(), bag.end());
  return torso_of_sets(g, bag, groups, seed);
}

int width_of(const DecompositionIndex& index) {
  int w = 0;
  for (NodeId t = 0; t < index.decomposition().num_nodes(); ++t) {
    w = std::max(w, static_cast<int>(index.cut(t).size()));
    w = std::max(w, torso_at(index, t, std::nullopt).size());
  }
  return w;
}

}  // namespace

Torso torso(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t,
            std::optional<std::uint64_t> order_seed) {
  DecompositionIndex index(g, tcd);
  index.check_node(t);
  return torso_at(index, t, order_seed);
}

int width(const ColoredMultigraph& g, const TreeCutDecomposition& tcd) {
  return width_of(DecompositionIndex(g, tcd));
}

NiceReport is_nice(const ColoredMultigraph& g, const TreeCutDecomposition& tcd) {
  DecompositionIndex index(g, tcd);
  NiceReport report;
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    if (!index.is_thin(t)) continue;
    for (NodeId s : index.children(tcd.parent[t])) {
      if (s == t) continue;
      bool touches = false;
      for (EdgeId id : index.cut(t)) {
        const Edge& e = g.edge(id);
        VertexId outside = index.in_subtree(t, e.u) ? e.v : e.u;
        if (index.in_subtree(s, outside)) touches = true;
      }
      if (touches) {
        report.nice = false;
        report.offending.emplace_back(t, s);
      }
    }
  }
  return report;
}

namespace {

NodeAnalysis analyse(const DecompositionIndex& index, NodeId t, std::optional<int> decomposition_width) {
  NodeAnalysis a;
  a.node = t;
  a.subtree = index.subtree_vertices(t);
  a.cut = index.cut(t);
  a.adhesion = static_cast<int>(a.cut.size());
  a.torso_size = torso_at(index, t, std::nullopt).size();
  a.thin = index.is_thin(t);
  const auto& bag = index.bag(t);
  for (NodeId c : index.children(t)) {
    auto nbrs = index.neighborhood(c);
    bool inside_bag = std::all_of(nbrs.begin(), nbrs.end(), [&](VertexId v) {
      return std::find(bag.begin(), bag.end(), v) != bag.end();
    });
    if (index.is_thin(c) && inside_bag) {
      a.b_children.push_back(c);
      if (nbrs.size() == 2) a.b_groups[{nbrs[0], nbrs[1]}].push_back(c);
    } else {
      a.a_children.push_back(c);
    }
  }
  if (decomposition_width) {
    a.a_bound_ok = static_cast<int>(a.a_children.size()) <= 2 * *decomposition_width + 1;
  }
  return a;
}

HatGraph hat_at(const DecompositionIndex& index, NodeId t) {
  const auto& g = index.graph();
  HatGraph hat;
  hat.vertices = index.bag(t);
  std::sort(hat.vertices.begin(), hat.vertices.end());
  for (const auto& e : g.edges()) {
    if (index.node_of(e.u) == t && index.node_of(e.v) == t) {
      hat.edges.push_back(HatEdge{e.u, e.v, false, e.id, kNoNode});
    }
  }
  NodeAnalysis a = analyse(index, t, std::nullopt);
  for (const auto& [pair, kids] : a.b_groups) {
    for (NodeId c : kids) hat.edges.push_back(HatEdge{pair.first, pair.second, true, kNoEdge, c});
  }
  return hat;
}

}  // namespace

NodeAnalysis classify_children(const ColoredMultigraph& g, const TreeCutDecomposition& tcd,
                               NodeId t) {
  DecompositionIndex index(g, tcd);
  index.check_node(t);
  return analyse(index, t, width_of(index));
}

HatGraph hat_graph(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t) {
  DecompositionIndex index(g, tcd);
  index.check_node(t);
  return hat_at(index, t);
}

bool is_star_forest(const HatGraph& hat) {
  // Union-find over the hat vertices, then test each component for a centre.
  std::map<VertexId, VertexId> parent;
  for (VertexId v : hat.vertices) parent[v] = v;
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    while (parent.at(v) != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : hat.edges) parent[find(e.u)] = find(e.v);

  std::map<VertexId, std::vector<const HatEdge*>> by_component;
  for (const auto& e : hat.edges) by_component[find(e.u)].push_back(&e);
  for (const auto& [comp, edges] : by_component) {
    // The centre must be an endpoint of the first edge.
    bool ok = false;
    for (VertexId c : {edges.front()->u, edges.front()->v}) {
      if (std::all_of(edges.begin(), edges.end(),
                      [&](const HatEdge* e) { return e->u == c || e->v == c; })) {
        ok = true;
      }
    }
    if (!ok) return false;
  }
  return true;
}

StarReport is_star_decomposition(const ColoredMultigraph& g, const TreeCutDecomposition& tcd) {
  DecompositionIndex index(g, tcd);
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    if (!is_star_forest(hat_at(index, t))) return StarReport{false, t};
  }
  return {};
}

namespace {

// Memoised search over Y-sets.  A subtree with vertex set S is a bag X
// inside S plus a partition of S \ X into child subtrees; its node width
// depends only on those sets, so the optimum per S is independent of the
// rest of the decomposition.  Empty leaves and empty single-child nodes
// never lower the width and are not generated.
class TcwSearch {
public:
  explicit TcwSearch(const ColoredMultigraph& g) : g_(g), n_(g.num_vertices()) {}

  int best(unsigned set) {
    if (auto it = memo_.find(set); it != memo_.end()) return it->second.width;
    Choice choice;
    int adh = adhesion_of(set);
    std::vector<VertexId> members = to_vector(set);
    // Bags in increasing mask order, partitions in canonical order.
    for (unsigned bag = 0;; bag = next_subset(bag, set)) {
      unsigned rest = set & ~bag;
      std::vector<unsigned> blocks;
      for_each_partition(rest, blocks, [&](const std::vector<unsigned>& parts) {
        if (bag == 0 && parts.size() == 1) return;
        std::vector<std::vector<VertexId>> groups{to_vector(full() & ~set)};
        for (unsigned p : parts) groups.push_back(to_vector(p));
        int node = std::max(adh, torso_of_sets(g_, to_vector(bag), groups).size());
        if (node >= choice.width) return;
        int w = node;
        for (unsigned p : parts) {
          w = std::max(w, best(p));
          if (w >= choice.width) return;
        }
        choice = Choice{w, bag, parts};
      });
      if (bag == set) break;
    }
    memo_[set] = choice;
    return choice.width;
  }

  void build(unsigned set, NodeId parent, TreeCutDecomposition& out) {
    best(set);
    const Choice& c = memo_.at(set);
    NodeId t = out.add_node(parent, to_vector(c.bag));
    for (unsigned p : c.parts) build(p, t, out);
  }

  unsigned full() const { return n_ == 0 ? 0u : (1u << n_) - 1; }

private:
  struct Choice {
    int width = 1 << 20;
    unsigned bag = 0;
    std::vector<unsigned> parts;
  };

  static unsigned next_subset(unsigned sub, unsigned set) { return (sub - set) & set; }

  std::vector<VertexId> to_vector(unsigned set) const {
    std::vector<VertexId> out;
    for (int v = 0; v < n_; ++v) {
      if (set >> v & 1u) out.push_back(v);
    }
    return out;
  }

  int adhesion_of(unsigned set) const {
    int count = 0;
    for (const auto& e : g_.edges()) {
      if (((set >> e.u) & 1u) != ((set >> e.v) & 1u)) ++count;
    }
    return count;
  }

  template <typename F>
  void for_each_partition(unsigned rest, std::vector<unsigned>& blocks, F&& f) {
    if (rest == 0) {
      f(blocks);
      return;
    }
    unsigned low = rest & (~rest + 1);
    unsigned others = rest & ~low;
    // The block holding the lowest remaining vertex, plus any subset of the others.
    for (unsigned extra = 0;; extra = next_subset(extra, others)) {
      blocks.push_back(low | extra);
      for_each_partition(rest & ~(low | extra), blocks, f);
      blocks.pop_back();
      if (extra == others) break;
    }
  }

  const ColoredMultigraph& g_;
  int n_;
  std::map<unsigned, Choice> memo_;
};

}  // namespace

TcwResult exhaustive_tcw(const ColoredMultigraph& g, int max_vertices) {
  if (g.num_vertices() > max_vertices) {
    throw SizeError("exhaustive tree-cutwidth guard: " + std::to_string(g.num_vertices()) +
                    " vertices > " + std::to_string(max_vertices));
  }
  TcwResult result;
  if (g.num_vertices() == 0) {
    result.decomposition.add_node(kNoNode, {});
    return result;
  }
  TcwSearch search(g);
  result.width = search.best(search.full());
  search.build(search.full(), kNoNode, result.decomposition);
  return result;
}

}  // namespace mincca
