#include "mincca/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mincca/error.hpp"

namespace mincca {

CostModel::CostModel(int num_colors, bool symmetric)
    : num_colors_(num_colors), symmetric_(symmetric) {
  if (num_colors < 0) throw InvalidColorError("negative color count");
  table_.assign(static_cast<std::size_t>(num_colors) * num_colors, 0);
}

void CostModel::check(ColorId c) const {
  if (!valid_color(c)) {
    throw InvalidColorError("unknown color " + std::to_string(c) + " (palette has " +
                            std::to_string(num_colors_) + " colors)");
  }
}

Cost CostModel::cost(ColorId in_color, ColorId out_color) const {
  check(in_color);
  check(out_color);
  return table_[static_cast<std::size_t>(in_color) * num_colors_ + out_color];
}

void CostModel::set(ColorId in_color, ColorId out_color, Cost value) {
  check(in_color);
  check(out_color);
  if (in_color == out_color) {
    if (value != 0) throw InvalidColorError("diagonal changeover cost must be zero");
    return;
  }
  table_[static_cast<std::size_t>(in_color) * num_colors_ + out_color] = value;
  if (symmetric_) table_[static_cast<std::size_t>(out_color) * num_colors_ + in_color] = value;
}

Cost cc_pair(const CostModel& costs, ColorId in_color, ColorId out_color) {
  return costs.cost(in_color, out_color);
}

ColoredMultigraph::ColoredMultigraph(int num_vertices) : incident_(num_vertices) {}

VertexId ColoredMultigraph::add_vertex() {
  incident_.emplace_back();
  return num_vertices() - 1;
}

EdgeId ColoredMultigraph::add_edge(VertexId u, VertexId v, ColorId color) {
  if (!has_vertex(u) || !has_vertex(v)) throw StructureError("edge endpoint out of range");
  if (u == v) throw StructureError("self-loop at vertex " + std::to_string(u));
  EdgeId id = num_edges();
  edges_.push_back(Edge{id, u, v, color});
  incident_[u].push_back(id);
  incident_[v].push_back(id);
  return id;
}

const Edge& ColoredMultigraph::edge(EdgeId e) const {
  if (!has_edge(e)) throw StructureError("unknown edge " + std::to_string(e));
  return edges_[e];
}

std::span<const EdgeId> ColoredMultigraph::incident(VertexId v) const {
  if (!has_vertex(v)) throw StructureError("unknown vertex " + std::to_string(v));
  return incident_[v];
}

int ColoredMultigraph::max_degree() const {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

int ColoredMultigraph::count_colors_used() const {
  std::set<ColorId> used;
  for (const auto& e : edges_) used.insert(e.color);
  return static_cast<int>(used.size());
}

bool ColoredMultigraph::connected() const {
  if (num_vertices() == 0) return true;
  std::vector<char> seen(num_vertices(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incident_[v]) {
      VertexId w = edges_[e].other(v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == num_vertices();
}

void Instance::validate() const {
  if (!graph.has_vertex(root)) throw StructureError("root is not a vertex");
  for (const auto& e : graph.edges()) {
    if (!costs.valid_color(e.color)) {
      throw InvalidColorError("edge " + std::to_string(e.id) + " has unknown color " +
                              std::to_string(e.color));
    }
  }
  if (!graph.connected()) throw NoSpanningTreeError("graph is disconnected");
}

Arborescence Arborescence::empty(int num_vertices, VertexId root) {
  return Arborescence{root, std::vector<EdgeId>(num_vertices, kNoEdge)};
}

ArborescenceReport validate_arborescence(const Instance& instance, const Arborescence& arb) {
  ArborescenceReport report;
  const auto& g = instance.graph;
  const int n = g.num_vertices();
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    report.problems.push_back(std::move(msg));
  };

  if (arb.root != instance.root) fail(report.spanning, "root differs from instance root");
  if (static_cast<int>(arb.parent_edge.size()) != n) {
    fail(report.spanning, "parent map has " + std::to_string(arb.parent_edge.size()) +
                              " slots for " + std::to_string(n) + " vertices");
    return report;
  }
  if (!g.has_vertex(arb.root)) {
    fail(report.spanning, "root is not a vertex");
    return report;
  }
  if (arb.parent_edge[arb.root] != kNoEdge) fail(report.incidence, "root has a parent edge");

  std::vector<VertexId> parent(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (v == arb.root) continue;
    EdgeId e = arb.parent_edge[v];
    if (e == kNoEdge) {
      fail(report.spanning, "vertex " + std::to_string(v) + " has no parent edge");
      continue;
    }
    if (!g.has_edge(e)) {
      fail(report.incidence, "vertex " + std::to_string(v) + " uses unknown edge " +
                                 std::to_string(e));
      continue;
    }
    if (!g.edge(e).incident(v)) {
      fail(report.incidence, "edge " + std::to_string(e) + " is not incident to vertex " +
                                 std::to_string(v));
      continue;
    }
    parent[v] = g.edge(e).other(v);
  }

  // Walk up from every vertex; revisiting a vertex of the current walk is a cycle.
  std::vector<int> state(n, 0);  // 0 new, 1 on walk, 2 reaches root
  state[arb.root] = 2;
  for (VertexId start = 0; start < n; ++start) {
    std::vector<VertexId> walk;
    VertexId v = start;
    while (v >= 0 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = parent[v];
    }
    bool reaches = v >= 0 && state[v] == 2;
    if (v >= 0 && state[v] == 1) {
      fail(report.acyclic, "parent relation has a cycle through vertex " + std::to_string(v));
    }
    for (VertexId w : walk) state[w] = reaches ? 2 : 3;
  }
  return report;
}

namespace {

void require_valid(const Instance& instance, const Arborescence& arb) {
  auto report = validate_arborescence(instance, arb);
  if (!report.ok()) {
    std::ostringstream os;
    os << "invalid arborescence";
    for (const auto& p : report.problems) os << "; " << p;
    throw StructureError(os.str());
  }
}

}  // namespace

VertexId parent_vertex(const Instance& instance, const Arborescence& arb, VertexId v) {
  EdgeId e = arb.parent_edge.at(v);
  if (e == kNoEdge) return -1;
  return instance.graph.edge(e).other(v);
}

std::map<EdgeId, EdgeId> prev_edge_map(const Instance& instance, const Arborescence& arb) {
  require_valid(instance, arb);
  std::map<EdgeId, EdgeId> prev;
  for (VertexId v = 0; v < instance.graph.num_vertices(); ++v) {
    EdgeId e = arb.parent_edge[v];
    if (e == kNoEdge) continue;
    VertexId p = parent_vertex(instance, arb, v);
    prev[e] = p == arb.root ? e : arb.parent_edge[p];
  }
  return prev;
}

namespace {

Cost charge_sum(const Instance& instance, const Arborescence& arb, const std::vector<char>& in_set) {
  const auto& g = instance.graph;
  Cost total = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    EdgeId e = arb.parent_edge[v];
    if (e == kNoEdge) continue;
    VertexId p = g.edge(e).other(v);
    if (p == arb.root || !in_set[p]) continue;
    total += instance.costs.cost(g.edge(arb.parent_edge[p]).color, g.edge(e).color);
  }
  return total;
}

}  // namespace

Cost evaluate_cost(const Instance& instance, const Arborescence& arb) {
  require_valid(instance, arb);
  return charge_sum(instance, arb, std::vector<char>(instance.graph.num_vertices(), 1));
}

Cost cost_at_vertices(const Instance& instance, const Arborescence& arb,
                      std::span<const VertexId> vertices) {
  require_valid(instance, arb);
  std::vector<char> in_set(instance.graph.num_vertices(), 0);
  for (VertexId v : vertices) {
    if (!instance.graph.has_vertex(v)) throw StructureError("unknown vertex in restriction set");
    in_set[v] = 1;
  }
  return charge_sum(instance, arb, in_set);
}

}  // namespace mincca
