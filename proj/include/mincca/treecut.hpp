#pragma once

// Tree-cut decompositions: validation, adhesion, torso, width, niceness,
// child classification, the red-edge bag graph and the star property.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mincca/graph.hpp"

namespace mincca {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

/// Rooted tree whose nodes carry bags forming a near-partition of V(G).
/// Node ids are dense; the root is the unique node with parent kNoNode.
struct TreeCutDecomposition {
  std::vector<NodeId> parent;
  std::vector<std::vector<VertexId>> bags;

  int num_nodes() const noexcept { return static_cast<int>(parent.size()); }
  NodeId add_node(NodeId parent_node, std::vector<VertexId> bag);
  NodeId root() const;  // throws StructureError unless exactly one root
  std::vector<NodeId> children(NodeId t) const;

  friend bool operator==(const TreeCutDecomposition&, const TreeCutDecomposition&) = default;
};

struct DecompositionReport {
  bool tree = true;       // parent links form one rooted tree
  bool disjoint = true;   // no vertex in two bags
  bool covering = true;   // every vertex in some bag
  std::vector<std::string> problems;

  bool ok() const noexcept { return tree && disjoint && covering; }
};

DecompositionReport validate_decomposition(const ColoredMultigraph& g,
                                           const TreeCutDecomposition& tcd);

/// Derived per-node data of a valid decomposition.  Construction throws
/// StructureError if the decomposition is invalid.
class DecompositionIndex {
public:
  DecompositionIndex(const ColoredMultigraph& g, const TreeCutDecomposition& tcd);

  const ColoredMultigraph& graph() const noexcept { return *g_; }
  const TreeCutDecomposition& decomposition() const noexcept { return *tcd_; }

  NodeId root() const noexcept { return root_; }
  NodeId node_of(VertexId v) const { return owner_.at(v); }
  const std::vector<NodeId>& children(NodeId t) const { return children_.at(t); }
  const std::vector<VertexId>& bag(NodeId t) const { return tcd_->bags.at(t); }
  /// Y_t, sorted.
  const std::vector<VertexId>& subtree_vertices(NodeId t) const { return subtree_.at(t); }
  bool in_subtree(NodeId t, VertexId v) const;
  /// Edges with exactly one endpoint in Y_t, sorted by id.
  const std::vector<EdgeId>& cut(NodeId t) const { return cut_.at(t); }
  /// Children before parents.
  const std::vector<NodeId>& postorder() const noexcept { return postorder_; }
  bool is_thin(NodeId t) const;
  /// N(Y_t): vertices outside Y_t adjacent to it.
  std::vector<VertexId> neighborhood(NodeId t) const;
  void check_node(NodeId t) const;

private:
  const ColoredMultigraph* g_;
  const TreeCutDecomposition* tcd_;
  NodeId root_ = kNoNode;
  std::vector<NodeId> owner_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<VertexId>> subtree_;
  std::vector<std::vector<char>> member_;
  std::vector<std::vector<EdgeId>> cut_;
  std::vector<NodeId> postorder_;
};

int adhesion(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t);

struct TorsoVertex {
  bool contracted = false;
  int id = 0;  // graph vertex id, or 0 for the outside and i for the i-th child

  friend bool operator==(const TorsoVertex&, const TorsoVertex&) = default;
};

/// Torso multigraph H_t: bag vertices plus the contracted vertices that
/// survive deletion and suppression.
struct Torso {
  std::vector<TorsoVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // indices into vertices

  int size() const noexcept { return static_cast<int>(vertices.size()); }
};

/// Computes the torso of node t.  Deletion (degree <= 1) and suppression
/// (degree 2, two distinct neighbours) of contracted vertices are repeated to
/// a fixpoint; with `order_seed` the rule applied next is chosen at random.
Torso torso(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t,
            std::optional<std::uint64_t> order_seed = std::nullopt);

/// Torso for an arbitrary bag and contracted groups; groups[0] is the
/// outside set, the rest are child subtrees.  Empty groups are skipped.
Torso torso_of_sets(const ColoredMultigraph& g, const std::vector<VertexId>& bag,
                    const std::vector<std::vector<VertexId>>& groups,
                    std::optional<std::uint64_t> order_seed = std::nullopt);

int width(const ColoredMultigraph& g, const TreeCutDecomposition& tcd);

struct NiceReport {
  bool nice = true;
  std::vector<std::pair<NodeId, NodeId>> offending;  // (thin node, sibling)
};

NiceReport is_nice(const ColoredMultigraph& g, const TreeCutDecomposition& tcd);

using VertexPair = std::pair<VertexId, VertexId>;  // first < second

struct NodeAnalysis {
  NodeId node = kNoNode;
  std::vector<VertexId> subtree;  // Y_t
  std::vector<EdgeId> cut;
  int adhesion = 0;
  int torso_size = 0;
  bool thin = false;
  std::vector<NodeId> a_children;
  std::vector<NodeId> b_children;
  /// Children of B_t whose neighbourhood is exactly {u, v}.
  std::map<VertexPair, std::vector<NodeId>> b_groups;
  /// |A_t| <= 2w + 1 for the decomposition width w.
  bool a_bound_ok = true;
};

NodeAnalysis classify_children(const ColoredMultigraph& g, const TreeCutDecomposition& tcd,
                               NodeId t);

struct HatEdge {
  VertexId u = 0;
  VertexId v = 0;
  bool red = false;
  EdgeId edge = kNoEdge;   // plain edges
  NodeId child = kNoNode;  // red edges
};

/// G[X_t] plus one red edge uv per child in B_t^{u,v}.
struct HatGraph {
  std::vector<VertexId> vertices;
  std::vector<HatEdge> edges;
};

HatGraph hat_graph(const ColoredMultigraph& g, const TreeCutDecomposition& tcd, NodeId t);

/// Every connected component has a vertex covering all of its edges.
bool is_star_forest(const HatGraph& hat);

struct StarReport {
  bool star = true;
  NodeId offending = kNoNode;
};

StarReport is_star_decomposition(const ColoredMultigraph& g, const TreeCutDecomposition& tcd);

inline constexpr int kExhaustiveTcwGuard = 6;

struct TcwResult {
  int width = 0;
  TreeCutDecomposition decomposition;
};

/// Minimum width over all tree-cut decompositions, by exhaustive search.
TcwResult exhaustive_tcw(const ColoredMultigraph& g, int max_vertices = kExhaustiveTcwGuard);

}  // namespace mincca
