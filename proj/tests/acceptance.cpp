// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// All comparisons are exact; the only tolerances are the time budgets below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mincca/error.hpp"
#include "mincca/exact.hpp"
#include "mincca/fpt.hpp"
#include "mincca/reductions.hpp"
#include "mincca/treecut.hpp"
#include "mincca/treecut_gen.hpp"
#include "support.hpp"

using namespace mincca;
using namespace mincca::testing;

namespace {

constexpr double kBudgetFptSeconds = 120.0;
constexpr double kBudgetCliqueSeconds = 300.0;
constexpr int kFptPairs = 200;
constexpr int kMaxVerticesFpt = 8;
constexpr int kMaxColorsFpt = 4;
constexpr Cost kMaxCostFpt = 5;
constexpr int kTorsoOrders = 20;
constexpr int kTableInstances = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

bool symmetric_zero_one(const CostModel& costs) {
  if (!costs.symmetric()) return false;
  for (ColorId a = 0; a < costs.num_colors(); ++a) {
    for (ColorId b = 0; b < costs.num_colors(); ++b) {
      if (costs.cost(a, b) > 1 || costs.cost(a, b) != costs.cost(b, a)) return false;
    }
  }
  return true;
}

// The k = 3 clique inputs shared by criteria 2 to 4: every edge subset for
// n = 1 (3 cross pairs, 8 subsets) and for n = 2 (12 cross pairs, 4096 subsets).
std::vector<CliqueInstance> clique_suite() {
  std::vector<CliqueInstance> out;
  for (int n : {1, 2}) {
    const auto pairs = cross_pairs(CliqueInstance{3, n, {}});
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      out.push_back(clique_from_mask(3, n, mask));
    }
  }
  return out;
}

GenParams fpt_params(std::uint64_t seed) {
  GenParams p;
  p.max_vertices = kMaxVerticesFpt;
  p.num_colors = kMaxColorsFpt;
  p.max_cost = kMaxCostFpt;
  p.symmetric = seed % 2 == 1;
  if (seed % 3 == 1) {
    p.shape = GenParams::Shape::centre_leaves;
    p.bag_size = 2 + static_cast<int>(seed % 3);
    p.num_leaves = 8 - p.bag_size - static_cast<int>(seed % 2);
  } else if (seed % 3 == 2) {
    p.max_nodes = 7;
  }
  return p;
}

void criterion1() {
  auto t0 = Clock::now();
  int mismatches = 0, bad_witness = 0, out_of_range = 0;
  for (std::uint64_t seed = 0; seed < kFptPairs; ++seed) {
    auto gi = gen_graph_with_decomposition(fpt_params(seed), seed);
    const auto& in = gi.instance;
    if (in.graph.num_vertices() > kMaxVerticesFpt || in.costs.num_colors() > kMaxColorsFpt) ++out_of_range;
    auto exact = solve_exact(in);
    auto fpt = fpt_solve(in, gi.decomposition);
    if (fpt.optimum != exact->optimum) ++mismatches;
    if (!validate_arborescence(in, fpt.witness).ok() || evaluate_cost(in, fpt.witness) != fpt.optimum ||
        evaluate_cost(in, exact->witness) != exact->optimum) {
      ++bad_witness;
    }
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << kFptPairs << " pairs, optimum mismatches " << mismatches << ", bad witnesses " << bad_witness
     << ", out of range " << out_of_range << ", " << secs << " s (budget " << kBudgetFptSeconds << ")";
  report(1, mismatches == 0 && bad_witness == 0 && out_of_range == 0 && secs < kBudgetFptSeconds, os.str());
}

void criterion2(const std::vector<CliqueInstance>& suite) {
  auto t0 = Clock::now();
  int wrong = 0, decode_wrong = 0, yes = 0;
  for (const auto& ci : suite) {
    auto out = gen_clique_simple(ci);
    bool clique = has_multicolored_clique(ci).has_value();
    auto tree = solve_exact(out.instance, out.threshold);
    if (clique != tree.has_value()) ++wrong;
    if (tree) {
      auto members = extract_clique(out, tree->witness);
      bool ok = true;
      for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) ok = ok && ci.adjacent(members[a], members[b]);
      }
      if (!ok) ++decode_wrong;
    }
    yes += clique;
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << suite.size() << " inputs (8 with n=1, 4096 with n=2), " << yes << " with a clique, iff violations " << wrong
     << ", bad decodes " << decode_wrong << ", " << secs << " s (budget " << kBudgetCliqueSeconds << ")";
  report(2, wrong == 0 && decode_wrong == 0 && secs < kBudgetCliqueSeconds, os.str());
}

// Removing the selectors leaves only edges at the root.
bool selector_removal_is_star(const ReductionOutput& out) {
  const auto& g = out.instance.graph;
  auto selector = [&](VertexId v) { return out.roles[v].size() > 1 && out.roles[v][0] == 's'; };
  for (const auto& e : g.edges()) {
    if (selector(e.u) || selector(e.v)) continue;
    if (e.u != out.instance.root && e.v != out.instance.root) return false;
  }
  return true;
}

void criterion3(const std::vector<CliqueInstance>& suite) {
  std::vector<CliqueInstance> inputs = suite;
  std::mt19937_64 rng(3);
  for (int k : {5, 7}) {
    for (int n = 1; n <= 4; ++n) {
      CliqueInstance ci{k, n, {}};
      for (auto [u, v] : cross_pairs(ci)) {
        if (rng() % 2) ci.add_edge(u, v);
      }
      inputs.push_back(ci);
    }
  }
  int bad_size = 0, bad_degree = 0, bad_star = 0;
  double worst_degree = 0;
  for (const auto& ci : inputs) {
    auto out = gen_clique_simple(ci);
    const auto& g = out.instance.graph;
    const int m = ci.k * (ci.k - 1) / 2;
    if (g.num_vertices() != (m + 1) * ci.n + m + 1) ++bad_size;
    double avg = 2.0 * g.num_edges() / g.num_vertices();
    worst_degree = std::max(worst_degree, avg);
    if (avg > 8.0) ++bad_degree;
    if (!selector_removal_is_star(out)) ++bad_star;
  }
  std::ostringstream os;
  os << inputs.size() << " outputs (k=3,5,7), vertex count violations " << bad_size << ", average degree > 8: "
     << bad_degree << " (max " << worst_degree << "), selector removal not a star: " << bad_star;
  report(3, bad_size == 0 && bad_degree == 0 && bad_star == 0, os.str());
}

void criterion4(const std::vector<CliqueInstance>& suite) {
  int wrong = 0, invalid = 0, not_nice = 0, not_star = 0, too_wide = 0, fpt_strict_refused = 0, fpt_mismatch = 0;
  int first_wrong = -1;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& ci = suite[i];
    auto out = gen_clique_multigraph(ci);
    const auto& g = out.instance.graph;
    const auto& tcd = *out.decomposition;
    bool clique = has_multicolored_clique(ci).has_value();
    auto exact = solve_exact(out.instance);
    if (clique != (exact->optimum == 0)) {
      ++wrong;
      if (first_wrong < 0) first_wrong = static_cast<int>(i);
    }
    if (!validate_decomposition(g, tcd).ok()) ++invalid;
    if (!is_nice(g, tcd).nice) ++not_nice;
    if (!is_star_decomposition(g, tcd).star) ++not_star;
    if (width(g, tcd) > ci.k * (ci.k - 1) / 2 + 1) ++too_wide;
    try {
      fpt_solve(out.instance, tcd);
    } catch (const PreconditionError&) {
      ++fpt_strict_refused;
    }
    FptOptions relaxed;
    relaxed.require_star = false;
    if (fpt_solve(out.instance, tcd, relaxed).optimum != exact->optimum) ++fpt_mismatch;
  }
  std::ostringstream os;
  os << suite.size() << " inputs, iff violations " << wrong;
  if (first_wrong >= 0) {
    os << " (first: n=" << suite[first_wrong].n << " edges";
    for (auto [u, v] : suite[first_wrong].edges) os << " " << u << "-" << v;
    os << ")";
  }
  os << ", invalid " << invalid << ", not nice " << not_nice << ", not star " << not_star << ", width > C(k,2)+1 "
     << too_wide << ", strict DP refused " << fpt_strict_refused << ", relaxed DP != exact " << fpt_mismatch;
  report(4, wrong == 0 && invalid == 0 && not_nice == 0 && not_star == 0 && too_wide == 0 && fpt_mismatch == 0 &&
                fpt_strict_refused == 0,
         os.str());
}

void formula_criterion(int id, const std::function<ReductionOutput(const MonotoneCnf&)>& gen, int max_colors,
                       bool check_degree) {
  auto suite = monotone_cnf_suite();
  int wrong = 0, false_yes = 0, false_no = 0, bad_colors = 0, bad_costs = 0, bad_degree = 0, decode_wrong = 0;
  for (const auto& f : suite) {
    auto r = gen(f);
    bool sat = sat_by_enumeration(f).has_value();
    auto tree = solve_exact(r.instance, 0);
    if (sat != tree.has_value()) {
      ++wrong;
      (sat ? false_no : false_yes)++;
    }
    if (tree && sat) {
      try {
        if (!f.satisfied_by(extract_assignment(r, tree->witness))) ++decode_wrong;
      } catch (const Error&) {
        ++decode_wrong;
      }
    }
    if (r.instance.costs.num_colors() > max_colors || r.instance.graph.count_colors_used() > max_colors) ++bad_colors;
    if (!symmetric_zero_one(r.instance.costs)) ++bad_costs;
    if (check_degree && r.instance.graph.max_degree() > 4) ++bad_degree;
  }
  std::ostringstream os;
  os << suite.size() << " formulas, iff violations " << wrong << " (unsatisfiable at 0: " << false_yes
     << ", satisfiable above 0: " << false_no << "), bad decodes " << decode_wrong << ", > " << max_colors
     << " colours " << bad_colors << ", not symmetric 0/1 " << bad_costs;
  if (check_degree) os << ", degree > 4 " << bad_degree;
  report(id, wrong == 0 && bad_colors == 0 && bad_costs == 0 && bad_degree == 0 && decode_wrong == 0, os.str());
}

ColoredMultigraph path4() {
  ColoredMultigraph g(4);
  g.add_edge(0, 1, 0);
  g.add_edge(1, 2, 0);
  g.add_edge(2, 3, 0);
  return g;
}

ColoredMultigraph cycle4() {
  ColoredMultigraph g = path4();
  g.add_edge(3, 0, 0);
  return g;
}

TreeCutDecomposition centre_with_leaves(std::vector<VertexId> centre, std::vector<VertexId> leaves) {
  TreeCutDecomposition tcd;
  NodeId top = tcd.add_node(kNoNode, std::move(centre));
  for (VertexId v : leaves) tcd.add_node(top, {v});
  return tcd;
}

bool torso_order_invariant(const ColoredMultigraph& g, const TreeCutDecomposition& tcd) {
  for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
    auto base = torso(g, tcd, t);
    auto want = canonical(torso_edges(base));
    for (std::uint64_t seed = 1; seed <= kTorsoOrders; ++seed) {
      auto other = torso(g, tcd, t, seed);
      if (other.size() != base.size() || canonical(torso_edges(other)) != want) return false;
    }
  }
  return true;
}

void criterion7() {
  using Edges = std::multiset<std::pair<int, int>>;
  bool examples = true;
  {
    auto g = cycle4();
    TreeCutDecomposition one;
    one.add_node(kNoNode, {0, 1, 2, 3});
    auto t = torso(g, one, 0);
    examples &= t.size() == 4 && t.edges.size() == 4 && width(g, one) == 4 && adhesion(g, one, 0) == 0;
    examples &= torso_order_invariant(g, one);
  }
  {
    auto g = path4();
    auto tcd = centre_with_leaves({1, 2}, {0, 3});
    auto t = torso(g, tcd, 0);
    examples &= t.size() == 2 && torso_edges(t) == Edges{{1, 2}} && width(g, tcd) == 2;
    examples &= adhesion(g, tcd, 1) == 1 && adhesion(g, tcd, 2) == 1;
    examples &= torso_order_invariant(g, tcd);
  }
  {
    auto g = cycle4();
    auto tcd = centre_with_leaves({0, 2}, {1, 3});
    auto t = torso(g, tcd, 0);
    examples &= t.size() == 2 && torso_edges(t) == Edges{{0, 2}, {0, 2}} && width(g, tcd) == 2;
    examples &= adhesion(g, tcd, 1) == 2 && torso(g, tcd, 1).size() == 2;
    examples &= torso_order_invariant(g, tcd);
  }

  std::mt19937_64 rng(7);
  int random_orders_bad = 0, bound_bad = 0, checked = 0;
  for (int round = 0; round < 300; ++round) {
    int n = 1 + round % 5;
    auto g = random_connected_graph(rng, n, round % 5, 1);
    const int tcw = exhaustive_tcw(g).width;
    for (int d = 0; d < 4; ++d) {
      auto tcd = random_decomposition(rng, n, 5);
      if (!validate_decomposition(g, tcd).ok()) continue;
      ++checked;
      if (tcw > width(g, tcd)) ++bound_bad;
      if (!torso_order_invariant(g, tcd)) ++random_orders_bad;
    }
  }
  std::ostringstream os;
  os << "worked examples " << (examples ? "match" : "differ") << ", " << checked
     << " random decompositions on <= 5 vertices: tcw above width " << bound_bad << ", torso order-dependent "
     << random_orders_bad;
  report(7, examples && bound_bad == 0 && random_orders_bad == 0 && checked > 0, os.str());
}

void criterion8() {
  int instances = 0, nodes = 0, differing = 0;
  for (std::uint64_t seed = 0; instances < kTableInstances; ++seed) {
    GenParams p = fpt_params(seed);
    p.max_vertices = 6;
    p.num_leaves = std::min(p.num_leaves, 4);
    p.bag_size = std::min(p.bag_size, 2);
    auto gi = gen_graph_with_decomposition(p, seed);
    auto run = fpt_run(gi.instance, gi.decomposition);
    const auto& tin = run.transformed.instance;
    DecompositionIndex index(tin.graph, run.transformed.decomposition);
    for (NodeId t = 0; t < run.transformed.decomposition.num_nodes(); ++t) {
      if (t == run.transformed.anchor_node) continue;
      std::map<std::pair<PartialOrientation, BoundaryPartition>, Cost> stored;
      for (const auto& [phi, inner] : run.tables[t].entries) {
        for (const auto& [part, entry] : inner) stored[{phi, part}] = entry.cost;
      }
      if (stored != brute_node_table(tin, index, t)) ++differing;
      ++nodes;
    }
    ++instances;
  }
  std::ostringstream os;
  os << instances << " instances, " << nodes << " node tables, differing from brute force " << differing;
  report(8, differing == 0 && instances >= kTableInstances, os.str());
}

}  // namespace

int main() {
  const auto suite = clique_suite();
  criterion1();
  criterion2(suite);
  criterion3(suite);
  criterion4(suite);
  formula_criterion(5, gen_sat_planar6, 6, false);
  formula_criterion(6, gen_sat_deg4, 8, true);
  criterion7();
  criterion8();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
