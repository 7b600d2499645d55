// Keys, the root transform, enumerations and the leaf table.

#include <algorithm>
#include <functional>
#include <set>

#include "fpt_internal.hpp"
#include "mincca/error.hpp"

namespace mincca {

const TableEntry* DPTable::find(const PartialOrientation& phi, const BoundaryPartition& part) const {
  auto it = entries.find(phi);
  if (it == entries.end()) return nullptr;
  auto jt = it->second.find(part);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::size_t DPTable::size() const {
  std::size_t n = 0;
  for (const auto& [phi, inner] : entries) n += inner.size();
  return n;
}

Cost sim_cost_in(const CostModel& costs, ColorId in_color, const SimColor& sim) {
  return costs.cost(in_color, sim.entry_color);
}

Cost sim_cost_out(const CostModel& costs, const SimColor& sim, ColorId out_color) {
  return costs.cost(sim.exit_color, out_color);
}

namespace detail {

bool tails_of(const DecompositionIndex& index, NodeId t, const PartialOrientation& phi,
              std::map<EdgeId, VertexId>& tails) {
  const auto& g = index.graph();
  const auto& cut = index.cut(t);
  std::set<VertexId> used;
  tails.clear();
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (phi[i] == EdgeState::absent) continue;
    const Edge& e = g.edge(cut[i]);
    VertexId in = inside_endpoint(index, t, e);
    VertexId tail = phi[i] == EdgeState::outward ? in : e.other(in);
    if (!used.insert(tail).second) return false;
    tails[e.id] = tail;
  }
  return true;
}

void offer(DPTable& table, const PartialOrientation& phi, BoundaryPartition part, TableEntry entry) {
  auto& slot = table.entries[phi];
  auto it = slot.find(part);
  if (it == slot.end()) {
    slot.emplace(std::move(part), std::move(entry));
  } else if (entry.cost < it->second.cost) {
    it->second = std::move(entry);
  }
}

}  // namespace detail

TransformedInput root_transform(const Instance& instance, const TreeCutDecomposition& tcd) {
  instance.validate();
  DecompositionIndex index(instance.graph, tcd);
  TransformedInput out;
  const auto& g = instance.graph;
  const int colors = instance.costs.num_colors();

  out.instance.graph = ColoredMultigraph(g.num_vertices());
  for (const auto& e : g.edges()) out.instance.graph.add_edge(e.u, e.v, e.color);
  VertexId anchor = out.instance.graph.add_vertex();
  out.neutral_color = colors;
  out.root_edge = out.instance.graph.add_edge(instance.root, anchor, out.neutral_color);

  // The new colour costs nothing in either direction.
  out.instance.costs = CostModel(colors + 1, instance.costs.symmetric());
  for (ColorId a = 0; a < colors; ++a) {
    for (ColorId b = 0; b < colors; ++b) {
      if (a != b) out.instance.costs.set(a, b, instance.costs.cost(a, b));
    }
  }
  out.instance.root = anchor;

  // Re-root at the node holding r by reversing the path to the old root.
  out.decomposition = tcd;
  out.root_node = index.node_of(instance.root);
  NodeId prev = kNoNode;
  NodeId cur = out.root_node;
  while (cur != kNoNode) {
    NodeId next = tcd.parent[cur];
    out.decomposition.parent[cur] = prev;
    prev = cur;
    cur = next;
  }
  out.anchor_node = out.decomposition.add_node(kNoNode, {anchor});
  out.decomposition.parent[out.root_node] = out.anchor_node;
  return out;
}

std::vector<PartialOrientation> enumerate_orientations(std::size_t cut_size) {
  std::vector<PartialOrientation> out;
  PartialOrientation cur(cut_size, EdgeState::absent);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cut_size) {
      out.push_back(cur);
      return;
    }
    for (EdgeState s : {EdgeState::absent, EdgeState::inward, EdgeState::outward}) {
      cur[i] = s;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<BoundaryPartition> enumerate_partitions(const DecompositionIndex& index, NodeId t,
                                                    const PartialOrientation& phi) {
  const auto& g = index.graph();
  const auto& cut = index.cut(t);
  std::set<VertexId> plus, minus;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (phi.at(i) == EdgeState::absent) continue;
    VertexId in = detail::inside_endpoint(index, t, g.edge(cut[i]));
    (phi[i] == EdgeState::inward ? plus : minus).insert(in);
  }
  std::vector<BoundaryPartition> out;
  if (!plus.empty() && minus.empty()) return out;
  std::vector<VertexId> leaves(plus.begin(), plus.end());
  std::vector<VertexId> centres(minus.begin(), minus.end());
  BoundaryPartition cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == leaves.size()) {
      out.push_back(cur);
      return;
    }
    VertexId v = leaves[i];
    if (minus.count(v)) {
      cur.emplace_back(v, v);
      rec(i + 1);
      cur.pop_back();
      return;
    }
    for (VertexId c : centres) {
      cur.emplace_back(v, c);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

DPTable leaf_table(const Instance& instance, const DecompositionIndex& index, NodeId t) {
  index.check_node(t);
  if (!index.children(t).empty()) throw PreconditionError("leaf_table on a node with children");
  const auto& g = instance.graph;
  const auto& costs = instance.costs;
  DPTable table;
  table.node = t;
  table.cut = index.cut(t);

  std::vector<VertexId> bag = index.bag(t);
  std::sort(bag.begin(), bag.end());
  std::map<VertexId, std::vector<EdgeId>> options;
  for (VertexId v : bag) {
    for (EdgeId id : g.incident(v)) {
      if (index.node_of(g.edge(id).other(v)) == t) options[v].push_back(id);
    }
    std::sort(options[v].begin(), options[v].end());
  }

  for (const auto& phi : enumerate_orientations(table.cut.size())) {
    std::map<EdgeId, VertexId> tails;
    if (!detail::tails_of(index, t, phi, tails)) continue;
    std::map<VertexId, EdgeId> parent;  // bag vertex -> parent edge
    std::vector<std::pair<VertexId, EdgeId>> inward;  // inside endpoint, edge
    for (auto [id, tail] : tails) {
      if (index.node_of(tail) == t) {
        parent[tail] = id;
      } else {
        inward.emplace_back(g.edge(id).other(tail), id);
      }
    }
    std::vector<VertexId> free;
    for (VertexId v : bag) {
      if (!parent.count(v)) free.push_back(v);
    }

    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i < free.size()) {
        for (EdgeId id : options[free[i]]) {
          parent[free[i]] = id;
          rec(i + 1);
        }
        parent.erase(free[i]);
        return;
      }
      // Every bag vertex must leave through an outward edge.
      std::map<VertexId, VertexId> exit_of;
      for (VertexId v : bag) {
        std::vector<VertexId> path;
        VertexId cur = v;
        for (;;) {
          if (auto it = exit_of.find(cur); it != exit_of.end()) {
            for (VertexId p : path) exit_of[p] = it->second;
            break;
          }
          if (std::find(path.begin(), path.end(), cur) != path.end()) return;  // cycle
          path.push_back(cur);
          EdgeId id = parent.at(cur);
          VertexId up = g.edge(id).other(cur);
          if (index.node_of(up) != t) {
            for (VertexId p : path) exit_of[p] = cur;
            break;
          }
          cur = up;
        }
      }
      Cost cost = 0;
      auto colour_of = [&](VertexId v) { return g.edge(parent.at(v)).color; };
      for (auto [v, id] : inward) cost += costs.cost(colour_of(v), g.edge(id).color);
      for (VertexId u : bag) {
        VertexId up = g.edge(parent.at(u)).other(u);
        if (index.node_of(up) == t) cost += costs.cost(colour_of(up), colour_of(u));
      }
      BoundaryPartition part;
      for (auto [v, id] : inward) part.emplace_back(v, exit_of.at(v));
      std::sort(part.begin(), part.end());
      part.erase(std::unique(part.begin(), part.end()), part.end());
      TableEntry entry;
      entry.cost = cost;
      entry.parents.assign(parent.begin(), parent.end());
      detail::offer(table, phi, std::move(part), std::move(entry));
    };
    rec(0);
  }
  return table;
}

}  // namespace mincca
