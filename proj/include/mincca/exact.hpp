#pragma once

// Exhaustive ground-truth solvers used to check everything else.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mincca/graph.hpp"
#include "mincca/problems.hpp"

namespace mincca {

struct SolveResult {
  Cost optimum = 0;
  Arborescence witness;
  std::uint64_t nodes_explored = 0;
};

/// Minimum changeover cost arborescence by include/exclude branching on the
/// lowest-id frontier edge, pruned by partial cost.  Returns nullopt when an
/// upper bound is given and no arborescence has cost <= upper_bound.
/// Throws NoSpanningTreeError on disconnected input.
std::optional<SolveResult> solve_exact(const Instance& instance,
                                       std::optional<Cost> upper_bound = std::nullopt);

inline constexpr int kDefaultEnumerationGuard = 12;

/// Calls `visit` once per spanning arborescence rooted at instance.root and
/// returns how many there were.
std::uint64_t enumerate_arborescences(const Instance& instance,
                                      const std::function<void(const Arborescence&)>& visit,
                                      int max_vertices = kDefaultEnumerationGuard);

/// Brute force over all n^k transversals.  Returns the clique members
/// (one per class, class order) or nullopt.
std::optional<std::vector<int>> has_multicolored_clique(const CliqueInstance& ci);

inline constexpr int kMaxSatVariables = 20;

/// Satisfying assignment by enumeration, or nullopt.
std::optional<std::vector<bool>> sat_by_enumeration(const MonotoneCnf& cnf);

}  // namespace mincca
