#pragma once

// Random instances paired with a valid, nice and star tree-cut decomposition.

#include <cstdint>

#include "mincca/graph.hpp"
#include "mincca/treecut.hpp"

namespace mincca {

struct GenParams {
  enum class Shape {
    random,        // random node tree, random bag sizes (internal bags may be empty)
    single_node,   // one node holding `bag_size` vertices
    centre_leaves  // centre bag of `bag_size` vertices plus `num_leaves` thin singleton leaves
  };

  Shape shape = Shape::random;
  int max_vertices = 8;
  int max_nodes = 5;
  int bag_size = 3;
  int num_leaves = 6;
  int num_colors = 4;
  Cost max_cost = 5;
  bool symmetric = false;
  double bold_probability = 0.3;
  double empty_bag_probability = 0.15;
  int max_attempts = 2000;
};

struct GeneratedInstance {
  Instance instance;
  TreeCutDecomposition decomposition;
};

/// Deterministic in (params, seed).  The root vertex always lies in the bag
/// of the decomposition root.  Throws PreconditionError when no valid output
/// is found within params.max_attempts tries.
GeneratedInstance gen_graph_with_decomposition(const GenParams& params, std::uint64_t seed);

}  // namespace mincca
