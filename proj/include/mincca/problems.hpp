#pragma once

// Source problems of the hardness reductions.

#include <set>
#include <utility>
#include <vector>

namespace mincca {

/// Multicolored clique input: k classes of n vertices each.  Vertices are
/// numbered class-major, so vertex `c * n + i` is the i-th member of class c.
struct CliqueInstance {
  int k = 0;
  int n = 0;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  int num_vertices() const noexcept { return k * n; }
  int class_of(int v) const noexcept { return v / n; }
  int vertex(int cls, int index) const noexcept { return cls * n + index; }

  /// Adds a cross-class edge; throws on intra-class or out-of-range pairs.
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;

  friend bool operator==(const CliqueInstance&, const CliqueInstance&) = default;
};

/// A clause whose literals are all positive or all negative.  Variables are
/// 0-based here; text files use 1-based indices.
struct MonotoneClause {
  bool positive = true;
  std::vector<int> vars;

  friend bool operator==(const MonotoneClause&, const MonotoneClause&) = default;
};

struct MonotoneCnf {
  int num_vars = 0;
  std::vector<MonotoneClause> clauses;

  bool satisfied_by(const std::vector<bool>& assignment) const;

  friend bool operator==(const MonotoneCnf&, const MonotoneCnf&) = default;
};

}  // namespace mincca
