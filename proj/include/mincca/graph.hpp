#pragma once

// Edge-colored multigraphs, changeover cost tables and rooted spanning
// trees (arborescences) together with their cost evaluation.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace mincca {

using VertexId = int;
using EdgeId = int;
using ColorId = int;
using Cost = std::uint64_t;

inline constexpr EdgeId kNoEdge = -1;

/// Changeover costs over ordered color pairs.  The diagonal is always zero.
/// A symmetric model keeps both directions equal on every write.
class CostModel {
public:
  CostModel() = default;
  CostModel(int num_colors, bool symmetric);

  int num_colors() const noexcept { return num_colors_; }
  bool symmetric() const noexcept { return symmetric_; }

  /// Cost of leaving through `out_color` after arriving through `in_color`.
  Cost cost(ColorId in_color, ColorId out_color) const;

  /// Sets cost(in, out); in symmetric mode also cost(out, in).  Writes to the
  /// diagonal are rejected unless the value is zero.
  void set(ColorId in_color, ColorId out_color, Cost value);

  bool valid_color(ColorId c) const noexcept { return c >= 0 && c < num_colors_; }

  friend bool operator==(const CostModel&, const CostModel&) = default;

private:
  void check(ColorId c) const;

  int num_colors_ = 0;
  bool symmetric_ = false;
  std::vector<Cost> table_;
};

Cost cc_pair(const CostModel& costs, ColorId in_color, ColorId out_color);

struct Edge {
  EdgeId id = kNoEdge;
  VertexId u = 0;
  VertexId v = 0;
  ColorId color = 0;

  VertexId other(VertexId w) const noexcept { return w == u ? v : u; }
  bool incident(VertexId w) const noexcept { return w == u || w == v; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected multigraph with dense vertex and edge ids.  Parallel edges are
/// allowed, self-loops are not.
class ColoredMultigraph {
public:
  ColoredMultigraph() = default;
  explicit ColoredMultigraph(int num_vertices);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, ColorId color);

  int num_vertices() const noexcept { return static_cast<int>(incident_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const;
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const EdgeId> incident(VertexId v) const;

  bool has_vertex(VertexId v) const noexcept { return v >= 0 && v < num_vertices(); }
  bool has_edge(EdgeId e) const noexcept { return e >= 0 && e < num_edges(); }
  int degree(VertexId v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const;
  int count_colors_used() const;

  bool connected() const;

  friend bool operator==(const ColoredMultigraph& a, const ColoredMultigraph& b) {
    return a.edges_ == b.edges_ && a.incident_.size() == b.incident_.size();
  }

private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

struct Instance {
  ColoredMultigraph graph;
  CostModel costs;
  VertexId root = 0;

  /// Throws when the root is missing, a color is unknown, or the graph is
  /// disconnected.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Spanning tree rooted at `root`, stored as the edge from every non-root
/// vertex to its parent.  parent_edge[root] is kNoEdge.
struct Arborescence {
  VertexId root = 0;
  std::vector<EdgeId> parent_edge;

  static Arborescence empty(int num_vertices, VertexId root);

  friend bool operator==(const Arborescence&, const Arborescence&) = default;
};

struct ArborescenceReport {
  bool spanning = true;
  bool acyclic = true;
  bool incidence = true;
  std::vector<std::string> problems;

  bool ok() const noexcept { return spanning && acyclic && incidence; }
};

ArborescenceReport validate_arborescence(const Instance& instance, const Arborescence& arb);

/// Parent vertex of `v` in `arb`; requires a valid arborescence.
VertexId parent_vertex(const Instance& instance, const Arborescence& arb, VertexId v);

/// prev(e) for every tree edge: the edge before e on the root path, or e
/// itself for edges at the root.
std::map<EdgeId, EdgeId> prev_edge_map(const Instance& instance, const Arborescence& arb);

Cost evaluate_cost(const Instance& instance, const Arborescence& arb);

/// Part of the tree cost charged at vertices of `vertices`.  A changeover
/// between prev(e) and e is charged at the vertex they share.
Cost cost_at_vertices(const Instance& instance, const Arborescence& arb,
                      std::span<const VertexId> vertices);

}  // namespace mincca
