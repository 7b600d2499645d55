#pragma once

// Dynamic program over a nice star tree-cut decomposition.  Tables are keyed
// by a partial orientation of the node's cut and a boundary partition, and
// store the cheapest changeover cost inside the subtree.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mincca/exact.hpp"
#include "mincca/graph.hpp"
#include "mincca/treecut.hpp"

namespace mincca {

/// State of one cut edge relative to the subtree Y_t.  Inward means the
/// outside endpoint hangs below the inside one; outward means the inside
/// endpoint hangs below the outside one.
enum class EdgeState : std::uint8_t { absent = 0, inward = 1, outward = 2 };

/// States aligned with the node's cut, sorted by edge id.
using PartialOrientation = std::vector<EdgeState>;

/// phi: every inside endpoint of an inward edge mapped to the inside endpoint
/// of the outward edge its tree path leaves through.  Sorted by first.
using BoundaryPartition = std::vector<std::pair<VertexId, VertexId>>;

struct TableKey {
  PartialOrientation orientation;
  BoundaryPartition partition;

  friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

struct TableEntry {
  Cost cost = 0;
  /// Parent edge chosen for every bag vertex.
  std::vector<std::pair<VertexId, EdgeId>> parents;
  /// Keys used for the children, in child order.
  std::vector<std::pair<NodeId, TableKey>> child_keys;
};

struct DPTable {
  NodeId node = kNoNode;
  std::vector<EdgeId> cut;
  std::map<PartialOrientation, std::map<BoundaryPartition, TableEntry>> entries;

  const TableEntry* find(const PartialOrientation& phi, const BoundaryPartition& part) const;
  std::size_t size() const;
};

/// A thin child crossed between its two boundary vertices, seen from the bag
/// as a single arc.  A changeover into it is priced with entry_color, one
/// out of it with exit_color.
struct SimColor {
  NodeId child = kNoNode;
  VertexId from = 0;
  VertexId to = 0;
  ColorId entry_color = 0;
  ColorId exit_color = 0;
  Cost weight = 0;
};

Cost sim_cost_in(const CostModel& costs, ColorId in_color, const SimColor& sim);
Cost sim_cost_out(const CostModel& costs, const SimColor& sim, ColorId out_color);

struct TransformedInput {
  Instance instance;
  TreeCutDecomposition decomposition;
  NodeId root_node = kNoNode;    // node holding the original root
  NodeId anchor_node = kNoNode;  // new top node holding the new root
  EdgeId root_edge = kNoEdge;
  ColorId neutral_color = 0;
};

/// Hangs the root r below a new vertex r' through an edge of a fresh colour
/// that is free to change into and out of.  The node holding r becomes the
/// only child of a new top node {r'}.
TransformedInput root_transform(const Instance& instance, const TreeCutDecomposition& tcd);

/// All 3^|cut| orientations, lexicographic in (edge order, absent < inward < outward).
std::vector<PartialOrientation> enumerate_orientations(std::size_t cut_size);

/// All partitions compatible with `phi` on the cut of node t.
std::vector<BoundaryPartition> enumerate_partitions(const DecompositionIndex& index, NodeId t,
                                                    const PartialOrientation& phi);

/// Direct enumeration of good forests inside the bag of a leaf node.
DPTable leaf_table(const Instance& instance, const DecompositionIndex& index, NodeId t);

/// Table of node t from the tables of its children (indexed by node id).
/// With allow_non_star, red edge classes whose orientation costs couple two
/// guessed parents are resolved by enumeration instead of throwing.
DPTable internal_table(const Instance& instance, const DecompositionIndex& index, NodeId t,
                       const std::vector<DPTable>& tables, bool allow_non_star = false);

struct FptOptions {
  bool require_nice = true;
  bool require_star = true;
};

struct FptRun {
  TransformedInput transformed;
  std::vector<DPTable> tables;  // indexed by node of the transformed decomposition
  std::optional<SolveResult> result;
};

/// Full run keeping the transformed input and every table.
FptRun fpt_run(const Instance& instance, const TreeCutDecomposition& tcd,
               const FptOptions& options = {});

/// Optimum and witness.  Throws PreconditionError for a decomposition that is
/// not nice or not star, StructureError for an invalid one.
SolveResult fpt_solve(const Instance& instance, const TreeCutDecomposition& tcd,
                      const FptOptions& options = {});

/// Parent edges of every vertex of Y_t realising the stored entry, read from
/// the witnesses of t and its descendants.  Other slots stay kNoEdge.
std::vector<EdgeId> reconstruct_forest(const FptRun& run, NodeId t, const TableKey& key);

}  // namespace mincca
