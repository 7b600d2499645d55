// Driver: checks, root transform, bottom-up tables and witness assembly.

#include <stdexcept>

#include "fpt_internal.hpp"
#include "mincca/error.hpp"

namespace mincca {

namespace {

void require_shape(const Instance& instance, const TreeCutDecomposition& tcd,
                   const FptOptions& options, const std::string& what) {
  if (options.require_nice) {
    auto nice = is_nice(instance.graph, tcd);
    if (!nice.nice) {
      auto [thin, sibling] = nice.offending.front();
      throw PreconditionError(what + "decomposition is not nice: thin node " +
                              std::to_string(thin) + " has a neighbour in sibling node " +
                              std::to_string(sibling));
    }
  }
  if (options.require_star) {
    auto star = is_star_decomposition(instance.graph, tcd);
    if (!star.star) {
      throw PreconditionError(what + "decomposition is not star: bag graph of node " +
                              std::to_string(star.offending) + " is not a union of stars");
    }
  }
}

}  // namespace

FptRun fpt_run(const Instance& instance, const TreeCutDecomposition& tcd,
               const FptOptions& options) {
  instance.validate();
  DecompositionIndex original(instance.graph, tcd);
  require_shape(instance, tcd, options, "");

  FptRun run;
  run.transformed = root_transform(instance, tcd);
  const auto& tin = run.transformed.instance;
  const auto& ttcd = run.transformed.decomposition;
  require_shape(tin, ttcd, options, "after re-rooting, ");

  DecompositionIndex index(tin.graph, ttcd);
  run.tables.assign(ttcd.num_nodes(), DPTable{});
  for (NodeId t : index.postorder()) {
    if (t == run.transformed.anchor_node) continue;
    run.tables[t] = index.children(t).empty()
                        ? leaf_table(tin, index, t)
                        : internal_table(tin, index, t, run.tables, !options.require_star);
  }

  const NodeId top = run.transformed.root_node;
  TableKey key{PartialOrientation{EdgeState::outward}, {}};
  const TableEntry* entry = run.tables[top].find(key.orientation, key.partition);
  if (!entry) throw std::logic_error("no table entry for the root edge");

  std::vector<EdgeId> parents = reconstruct_forest(run, top, key);
  Arborescence witness = Arborescence::empty(instance.graph.num_vertices(), instance.root);
  for (VertexId v = 0; v < instance.graph.num_vertices(); ++v) {
    if (v != instance.root) witness.parent_edge[v] = parents[v];
  }
  Cost check = evaluate_cost(instance, witness);
  if (check != entry->cost) {
    throw std::logic_error("witness cost " + std::to_string(check) + " differs from optimum " +
                           std::to_string(entry->cost));
  }
  std::uint64_t explored = 0;
  for (const auto& tab : run.tables) explored += tab.size();
  run.result = SolveResult{entry->cost, std::move(witness), explored};
  return run;
}

SolveResult fpt_solve(const Instance& instance, const TreeCutDecomposition& tcd,
                      const FptOptions& options) {
  return *fpt_run(instance, tcd, options).result;
}

std::vector<EdgeId> reconstruct_forest(const FptRun& run, NodeId t, const TableKey& key) {
  std::vector<EdgeId> parents(run.transformed.instance.graph.num_vertices(), kNoEdge);
  std::vector<std::pair<NodeId, TableKey>> stack{{t, key}};
  while (!stack.empty()) {
    auto [node, k] = std::move(stack.back());
    stack.pop_back();
    const TableEntry* e = run.tables.at(node).find(k.orientation, k.partition);
    if (!e) throw std::logic_error("witness refers to a missing entry of node " +
                                   std::to_string(node));
    for (auto [v, id] : e->parents) parents[v] = id;
    for (const auto& ck : e->child_keys) stack.push_back(ck);
  }
  return parents;
}

}  // namespace mincca
