#include "mincca/exact.hpp"

#include <limits>

#include "mincca/error.hpp"

namespace mincca {

namespace {

// Include/exclude search over spanning arborescences grown from the root.
// Every leaf of the search is a distinct spanning tree.
class TreeSearch {
public:
  explicit TreeSearch(const Instance& instance)
      : instance_(instance),
        g_(instance.graph),
        in_tree_(g_.num_vertices(), 0),
        banned_(g_.num_edges(), 0),
        current_(Arborescence::empty(g_.num_vertices(), instance.root)) {
    in_tree_[instance.root] = 1;
    tree_size_ = 1;
  }

  // visit(arb, cost) is called per complete tree; prune(cost) cuts a branch.
  template <typename Visit, typename Prune>
  void run(Visit&& visit, Prune&& prune) {
    recurse(0, visit, prune);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

private:
  EdgeId first_frontier_edge() const {
    for (const auto& e : g_.edges()) {
      if (!banned_[e.id] && in_tree_[e.u] != in_tree_[e.v]) return e.id;
    }
    return kNoEdge;
  }

  bool rest_reachable() const {
    std::vector<char> seen(in_tree_);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < g_.num_vertices(); ++v) {
      if (seen[v]) stack.push_back(v);
    }
    int count = tree_size_;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (EdgeId id : g_.incident(v)) {
        if (banned_[id]) continue;
        VertexId w = g_.edge(id).other(v);
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == g_.num_vertices();
  }

  template <typename Visit, typename Prune>
  void recurse(Cost cost, Visit& visit, Prune& prune) {
    ++nodes_;
    if (prune(cost)) return;
    if (tree_size_ == g_.num_vertices()) {
      visit(current_, cost);
      return;
    }
    EdgeId id = first_frontier_edge();
    if (id == kNoEdge) return;
    const Edge& e = g_.edge(id);
    VertexId inside = in_tree_[e.u] ? e.u : e.v;
    VertexId outside = e.other(inside);

    Cost step = 0;
    if (inside != instance_.root) {
      step = instance_.costs.cost(g_.edge(current_.parent_edge[inside]).color, e.color);
    }
    in_tree_[outside] = 1;
    ++tree_size_;
    current_.parent_edge[outside] = id;
    recurse(cost + step, visit, prune);
    current_.parent_edge[outside] = kNoEdge;
    --tree_size_;
    in_tree_[outside] = 0;

    banned_[id] = 1;
    if (rest_reachable()) recurse(cost, visit, prune);
    banned_[id] = 0;
  }

  const Instance& instance_;
  const ColoredMultigraph& g_;
  std::vector<char> in_tree_;
  std::vector<char> banned_;
  Arborescence current_;
  int tree_size_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<SolveResult> solve_exact(const Instance& instance, std::optional<Cost> upper_bound) {
  instance.validate();
  // Strict bound: a branch survives only while it can still improve.
  Cost bound = std::numeric_limits<Cost>::max();
  if (upper_bound) bound = *upper_bound == bound ? bound : *upper_bound + 1;

  std::optional<SolveResult> best;
  TreeSearch search(instance);
  search.run(
      [&](const Arborescence& arb, Cost cost) {
        if (cost < bound) {
          bound = cost;
          best = SolveResult{cost, arb, 0};
        }
      },
      [&](Cost cost) { return cost >= bound; });
  if (best) best->nodes_explored = search.nodes();
  return best;
}

std::uint64_t enumerate_arborescences(const Instance& instance,
                                      const std::function<void(const Arborescence&)>& visit,
                                      int max_vertices) {
  if (instance.graph.num_vertices() > max_vertices) {
    throw SizeError("enumeration guard: " + std::to_string(instance.graph.num_vertices()) +
                    " vertices > " + std::to_string(max_vertices));
  }
  instance.validate();
  std::uint64_t count = 0;
  TreeSearch search(instance);
  search.run(
      [&](const Arborescence& arb, Cost) {
        ++count;
        visit(arb);
      },
      [](Cost) { return false; });
  return count;
}

std::optional<std::vector<int>> has_multicolored_clique(const CliqueInstance& ci) {
  if (ci.k <= 0) return std::vector<int>{};
  if (ci.n <= 0) return std::nullopt;
  std::vector<int> pick(ci.k, 0);
  // Depth-first over classes, extending only adjacent prefixes.
  std::function<bool(int)> extend = [&](int cls) {
    if (cls == ci.k) return true;
    for (int i = 0; i < ci.n; ++i) {
      int v = ci.vertex(cls, i);
      bool ok = true;
      for (int c = 0; c < cls && ok; ++c) ok = ci.adjacent(pick[c], v);
      if (!ok) continue;
      pick[cls] = v;
      if (extend(cls + 1)) return true;
    }
    return false;
  };
  if (extend(0)) return pick;
  return std::nullopt;
}

std::optional<std::vector<bool>> sat_by_enumeration(const MonotoneCnf& cnf) {
  if (cnf.num_vars > kMaxSatVariables) {
    throw SizeError("sat enumeration guard: " + std::to_string(cnf.num_vars) + " variables");
  }
  const std::uint64_t total = std::uint64_t{1} << cnf.num_vars;
  std::vector<bool> assignment(cnf.num_vars);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < cnf.num_vars; ++i) assignment[i] = (mask >> i) & 1;
    if (cnf.satisfied_by(assignment)) return assignment;
  }
  return std::nullopt;
}

}  // namespace mincca
