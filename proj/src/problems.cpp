#include "mincca/problems.hpp"

#include <string>

#include "mincca/error.hpp"

namespace mincca {

void CliqueInstance::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) {
    throw StructureError("clique edge endpoint out of range");
  }
  if (class_of(u) == class_of(v)) {
    throw StructureError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                         " joins two vertices of the same class");
  }
  edges.insert(u < v ? std::pair{u, v} : std::pair{v, u});
}

bool CliqueInstance::adjacent(int u, int v) const {
  return edges.count(u < v ? std::pair{u, v} : std::pair{v, u}) > 0;
}

bool MonotoneCnf::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int x : clause.vars) {
      if (assignment.at(x) == clause.positive) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace mincca
