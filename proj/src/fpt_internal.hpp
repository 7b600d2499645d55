#pragma once

// Helpers shared by the table routines.

#include <limits>
#include <map>
#include <vector>

#include "mincca/fpt.hpp"

namespace mincca::detail {

inline constexpr Cost kInfinity = std::numeric_limits<Cost>::max() / 4;

inline Cost add_sat(Cost a, Cost b) { return (a >= kInfinity || b >= kInfinity) ? kInfinity : a + b; }

/// The endpoint of `e` inside Y_t.
inline VertexId inside_endpoint(const DecompositionIndex& index, NodeId t, const Edge& e) {
  return index.in_subtree(t, e.u) ? e.u : e.v;
}

/// Orientation of the cut of t induced by arcs given as edge -> tail vertex.
inline PartialOrientation orientation_from_tails(const DecompositionIndex& index, NodeId t,
                                                 const std::map<EdgeId, VertexId>& tails) {
  const auto& cut = index.cut(t);
  PartialOrientation phi(cut.size(), EdgeState::absent);
  for (std::size_t i = 0; i < cut.size(); ++i) {
    auto it = tails.find(cut[i]);
    if (it == tails.end()) continue;
    phi[i] = index.in_subtree(t, it->second) ? EdgeState::outward : EdgeState::inward;
  }
  return phi;
}

/// Tail vertex of every oriented cut edge, or false if a vertex would get two
/// parents.
bool tails_of(const DecompositionIndex& index, NodeId t, const PartialOrientation& phi,
              std::map<EdgeId, VertexId>& tails);

/// Keeps the first strictly cheapest entry per key.
void offer(DPTable& table, const PartialOrientation& phi, BoundaryPartition part, TableEntry entry);

}  // namespace mincca::detail
