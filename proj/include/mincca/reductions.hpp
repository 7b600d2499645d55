#pragma once

// Instance generators for the hardness reductions from multicolored clique
// and planar monotone 3-SAT, with decoders from low-cost trees back to
// cliques and assignments.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mincca/graph.hpp"
#include "mincca/problems.hpp"
#include "mincca/treecut.hpp"

namespace mincca {

struct ReductionOutput {
  Instance instance;
  Cost threshold = 0;  // yes-instance iff optimum <= threshold
  std::optional<TreeCutDecomposition> decomposition;
  std::vector<std::string> roles;  // one name per vertex

  // Decoding aids.
  std::vector<int> source;          // clique vertex copied or associated, else -1
  std::vector<int> occurrence;      // occurrence index along the selector path, else -1
  std::vector<VertexId> special;    // special selectors, class order
  std::vector<std::array<VertexId, 4>> gadgets;  // per variable: left, plus, right, minus
};

/// For even k, adds a class of n vertices adjacent to every other vertex;
/// odd k is returned unchanged.
CliqueInstance lift_even_k(const CliqueInstance& ci);

/// Closed walk over K_k (vertices 0..k-1) using every edge once, starting
/// 0, 1, ..., k-1, 0.  Requires odd k >= 3.
std::vector<int> euler_circuit_kk(int k);

/// Simple-graph reduction: selector path with class copies, root edges and
/// jumping edges, one colour per edge, ordered costs in {0, 1, B} with
/// B = C(k,2) + 1, threshold C(k,2).
ReductionOutput gen_clique_simple(const CliqueInstance& ci);

/// Multigraph reduction: contracted selector path with horizontal multiedges
/// and subdivided jumping multiedges, ordered 0/1 costs, threshold 0, and a
/// decomposition with the root and selectors in the centre bag.
ReductionOutput gen_clique_multigraph(const CliqueInstance& ci);

/// Planar reduction with six colours and symmetric 0/1 costs, threshold 0.
ReductionOutput gen_sat_planar6(const MonotoneCnf& cnf);

/// Planar reduction with maximum degree 4, eight colours and symmetric 0/1
/// costs, threshold 0.
ReductionOutput gen_sat_deg4(const MonotoneCnf& cnf);

/// Clique read off the left edges of the special selectors of a tree for a
/// gen_clique_simple output.  Throws Error if the tree costs more than the
/// threshold.
std::vector<int> extract_clique(const ReductionOutput& out, const Arborescence& tree);

/// Assignment read off the traversal of every variable gadget.  Throws Error
/// if the tree costs more than the threshold or a gadget is crossed neither way.
std::vector<bool> extract_assignment(const ReductionOutput& out, const Arborescence& tree);

}  // namespace mincca
