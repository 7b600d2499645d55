#include "mincca/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mincca/error.hpp"

namespace mincca {

namespace {

void check_clique_input(const CliqueInstance& ci) {
  if (ci.k < 3 || ci.k % 2 == 0) {
    throw PreconditionError("clique reductions need odd k >= 3 (got k = " + std::to_string(ci.k) +
                            "); lift even k first");
  }
  if (ci.n < 1) throw PreconditionError("clique classes must be non-empty");
  for (auto [u, v] : ci.edges) {
    if (u < 0 || v >= ci.num_vertices() || ci.class_of(u) == ci.class_of(v)) {
      throw PreconditionError("clique edge {" + std::to_string(u) + "," + std::to_string(v) +
                              "} is not a cross-class pair");
    }
  }
}

void check_cnf_input(const MonotoneCnf& cnf) {
  if (cnf.num_vars < 1) throw PreconditionError("formula has no variables");
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    const auto& c = cnf.clauses[j];
    const std::string name = "clause " + std::to_string(j + 1);
    if (c.vars.empty()) throw PreconditionError(name + " is empty");
    if (c.vars.size() > 3) throw PreconditionError(name + " has more than 3 literals");
    std::set<int> seen;
    for (int x : c.vars) {
      if (x < 0 || x >= cnf.num_vars) throw PreconditionError(name + " uses an unknown variable");
      if (!seen.insert(x).second) throw PreconditionError(name + " repeats a variable");
    }
  }
}

// Accumulates vertices with their roles and decoding attributes.
struct Builder {
  ReductionOutput out;
  ColoredMultigraph g;

  VertexId vertex(std::string role, int source = -1, int occurrence = -1) {
    VertexId v = g.add_vertex();
    out.roles.push_back(std::move(role));
    out.source.push_back(source);
    out.occurrence.push_back(occurrence);
    return v;
  }

  ReductionOutput finish(CostModel costs, Cost threshold) {
    out.instance.graph = std::move(g);
    out.instance.costs = std::move(costs);
    out.instance.root = 0;
    out.threshold = threshold;
    out.instance.validate();
    return std::move(out);
  }
};

std::string idx(int i) { return std::to_string(i + 1); }

}  // namespace

CliqueInstance lift_even_k(const CliqueInstance& ci) {
  if (ci.k % 2 == 1) return ci;
  CliqueInstance out;
  out.k = ci.k + 1;
  out.n = ci.n;
  out.edges = ci.edges;
  for (int i = 0; i < ci.n; ++i) {
    int w = out.vertex(ci.k, i);
    for (int v = 0; v < ci.num_vertices(); ++v) out.add_edge(v, w);
  }
  return out;
}

std::vector<int> euler_circuit_kk(int k) {
  if (k < 3 || k % 2 == 0) {
    throw PreconditionError("K_k has an Euler circuit only for odd k >= 3");
  }
  std::vector<std::set<int>> rest(k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (a != b) rest[a].insert(b);
    }
  }
  std::vector<int> walk;
  for (int i = 0; i < k; ++i) {
    walk.push_back(i);
    int j = (i + 1) % k;
    rest[i].erase(j);
    rest[j].erase(i);
  }
  walk.push_back(0);

  // Hierholzer on the leftover edges from vertex 0, smallest neighbour first.
  std::vector<int> stack{0}, tour;
  while (!stack.empty()) {
    int v = stack.back();
    if (rest[v].empty()) {
      tour.push_back(v);
      stack.pop_back();
    } else {
      int w = *rest[v].begin();
      rest[v].erase(w);
      rest[w].erase(v);
      stack.push_back(w);
    }
  }
  std::reverse(tour.begin(), tour.end());
  walk.insert(walk.end(), tour.begin() + 1, tour.end());
  return walk;
}

ReductionOutput gen_clique_simple(const CliqueInstance& ci) {
  check_clique_input(ci);
  const int k = ci.k, n = ci.n;
  const std::vector<int> w = euler_circuit_kk(k);
  const int m = static_cast<int>(w.size()) - 1;  // C(k,2)
  const Cost big = m + 1;

  Builder b;
  b.vertex("root");
  // copies[q][x]: copy of the x-th member of class w[q] in occurrence q.
  std::vector<std::vector<VertexId>> copies(m + 1);
  std::vector<VertexId> sel(m + 1, -1);  // 1-based
  auto add_occurrence = [&](int q) {
    for (int x = 0; x < n; ++x) {
      int src = ci.vertex(w[q], x);
      copies[q].push_back(b.vertex("o" + std::to_string(q) + "_v" + idx(src), src, q));
    }
  };
  add_occurrence(0);
  for (int q = 1; q <= m; ++q) {
    sel[q] = b.vertex("s" + std::to_string(q) + "_" + idx(w[q - 1]) + idx(w[q]));
    add_occurrence(q);
  }
  for (int i = 1; i <= k; ++i) b.out.special.push_back(sel[i]);

  // Selector edges are named from the selector's side: `left` reaches
  // occurrence q-1, `right` reaches occurrence q.
  enum class Kind { root_path, root_extra, left, right, jump };
  struct Info {
    Kind kind;
    int selector;  // q of the selector endpoint, or 0
    VertexId copy;
  };
  std::vector<Info> info;
  auto edge = [&](VertexId u, VertexId v, Info i) {
    b.g.add_edge(u, v, static_cast<ColorId>(info.size()));
    info.push_back(i);
  };
  for (VertexId c : copies[0]) edge(0, c, {Kind::root_path, 0, c});
  for (int q = 1; q <= m; ++q) {
    for (VertexId c : copies[q - 1]) edge(sel[q], c, {Kind::left, q, c});
    for (VertexId c : copies[q]) edge(sel[q], c, {Kind::right, q, c});
  }
  for (int j = 2; j <= k; ++j) {
    for (VertexId c : copies[j - 1]) edge(0, c, {Kind::root_extra, 0, c});
  }
  for (int i = 1; i <= k; ++i) {
    for (int q = i; q <= m; ++q) {
      if (w[q] != i - 1) continue;
      for (VertexId c : copies[q]) edge(sel[i], c, {Kind::jump, i, c});
    }
  }

  const int colors = static_cast<int>(info.size());
  CostModel costs(colors, false);
  for (ColorId a = 0; a < colors; ++a) {
    for (ColorId c = 0; c < colors; ++c) {
      if (a != c) costs.set(a, c, big);
    }
  }
  const auto& src = b.out.source;
  for (VertexId v = 0; v < b.g.num_vertices(); ++v) {
    for (EdgeId e1 : b.g.incident(v)) {
      for (EdgeId e2 : b.g.incident(v)) {
        if (e1 == e2) continue;
        const Info& i1 = info[e1];
        const Info& i2 = info[e2];
        if (i1.kind == Kind::left && i1.selector > 0 && v == sel[i1.selector]) {
          // At a selector, arriving from the left occurrence.
          int x = src[i1.copy];
          if (i2.kind == Kind::right && i2.selector == i1.selector) {
            if (ci.adjacent(x, src[i2.copy])) costs.set(e1, e2, 1);
          } else if (i2.kind == Kind::jump && i2.selector == i1.selector &&
                     src[i2.copy] != x) {
            costs.set(e1, e2, 0);
          }
        } else if (v == i1.copy) {
          if (i1.kind == Kind::root_path && i2.kind == Kind::left && i2.selector == 1) {
            costs.set(e1, e2, 0);
          } else if (i1.kind == Kind::right && i2.kind == Kind::left &&
                     i2.selector == i1.selector + 1) {
            costs.set(e1, e2, 0);
          }
        }
      }
    }
  }
  return b.finish(std::move(costs), m);
}

ReductionOutput gen_clique_multigraph(const CliqueInstance& ci) {
  check_clique_input(ci);
  const int k = ci.k, n = ci.n;
  const std::vector<int> w = euler_circuit_kk(k);
  const int m = static_cast<int>(w.size()) - 1;

  Builder b;
  b.vertex("root");
  std::vector<VertexId> sel(m + 1, 0);  // sel[0] is the root
  for (int q = 1; q <= m; ++q) {
    sel[q] = b.vertex("s" + std::to_string(q) + "_" + idx(w[q - 1]) + idx(w[q]));
  }
  for (int i = 1; i <= k; ++i) b.out.special.push_back(sel[i]);

  // Every edge records the clique vertex it is associated with.
  enum class Kind { horizontal, inner };
  struct Info {
    Kind kind;
    int assoc;
  };
  std::vector<Info> info;
  auto edge = [&](VertexId u, VertexId v, Info i) {
    b.g.add_edge(u, v, static_cast<ColorId>(info.size()));
    info.push_back(i);
  };
  // Horizontal multiedge into s_{q+1} carries the class w[q].
  for (int q = 0; q < m; ++q) {
    for (int x = 0; x < n; ++x) edge(sel[q], sel[q + 1], {Kind::horizontal, ci.vertex(w[q], x)});
  }
  for (int i = 1; i <= k; ++i) {
    for (int q = i; q <= m - 1; ++q) {
      if (w[q] != i - 1) continue;
      for (int x = 0; x < n; ++x) {
        int a = ci.vertex(i - 1, x);
        VertexId mid = b.vertex("j" + idx(i - 1) + "_" + std::to_string(q + 1) + "_v" + idx(a), a);
        edge(sel[i], mid, {Kind::inner, a});
        edge(mid, sel[q + 1], {Kind::inner, a});
      }
    }
  }

  const int colors = static_cast<int>(info.size());
  CostModel costs(colors, false);
  for (ColorId a = 0; a < colors; ++a) {
    for (ColorId c = 0; c < colors; ++c) {
      if (a != c) costs.set(a, c, 1);
    }
  }
  for (int q = 1; q <= m; ++q) {
    const VertexId s = sel[q];
    const bool special = q <= k;
    for (EdgeId e1 : b.g.incident(s)) {
      const Edge& l = b.g.edge(e1);
      // Left horizontal: joins s_{q-1} and s_q.
      if (info[e1].kind != Kind::horizontal || l.other(s) != sel[q - 1]) continue;
      const int x = info[e1].assoc;
      for (EdgeId e2 : b.g.incident(s)) {
        if (e2 == e1) continue;
        const Edge& r = b.g.edge(e2);
        const Info& i2 = info[e2];
        bool zero = false;
        if (i2.kind == Kind::horizontal) {
          zero = q < m && r.other(s) == sel[q + 1] && ci.adjacent(x, i2.assoc);
        } else {
          zero = special ? i2.assoc != x : i2.assoc == x;
        }
        if (zero) costs.set(e1, e2, 0);
      }
    }
  }

  TreeCutDecomposition tcd;
  std::vector<VertexId> centre(sel.begin(), sel.end());
  NodeId top = tcd.add_node(kNoNode, centre);
  for (VertexId v = m + 1; v < b.g.num_vertices(); ++v) tcd.add_node(top, {v});
  b.out.decomposition = std::move(tcd);
  return b.finish(std::move(costs), 0);
}

namespace {

// Colours of the formula reductions, numbered as in the gadget description;
// ids are one less.
constexpr ColorId col(int c) { return c - 1; }

struct SatLayout {
  Builder b;
  std::vector<VertexId> clause;
};

SatLayout sat_skeleton(const MonotoneCnf& cnf) {
  SatLayout s;
  s.b.vertex("root");
  for (int i = 0; i < cnf.num_vars; ++i) {
    const std::string x = "x" + idx(i);
    VertexId l = s.b.vertex(x + "_l"), p = s.b.vertex(x + "_pos");
    VertexId r = s.b.vertex(x + "_r"), m = s.b.vertex(x + "_neg");
    s.b.out.gadgets.push_back({l, p, r, m});
    s.b.g.add_edge(l, p, col(1));
    s.b.g.add_edge(p, r, col(2));
    s.b.g.add_edge(r, m, col(1));
    s.b.g.add_edge(m, l, col(2));
    s.b.g.add_edge(p, m, col(3));
  }
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    s.clause.push_back(s.b.vertex("C" + idx(static_cast<int>(j))));
  }
  return s;
}

// Colour of each literal's clause edge: 4, 5, 6 in increasing variable order.
std::map<std::pair<int, int>, ColorId> clause_colours(const MonotoneCnf& cnf) {
  std::map<std::pair<int, int>, ColorId> out;
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    std::vector<int> vars = cnf.clauses[j].vars;
    std::sort(vars.begin(), vars.end());
    for (std::size_t t = 0; t < vars.size(); ++t) {
      out[{static_cast<int>(j), vars[t]}] = col(4 + static_cast<int>(t));
    }
  }
  return out;
}

void set_sym(CostModel& costs, int a, int c, Cost v) { costs.set(col(a), col(c), v); }

void planar_costs(CostModel& costs) {
  set_sym(costs, 1, 2, 1);
  set_sym(costs, 1, 3, 0);
  set_sym(costs, 2, 3, 0);
  for (int c = 4; c <= 6; ++c) {
    set_sym(costs, 1, c, 0);
    set_sym(costs, 2, c, 0);
    set_sym(costs, 3, c, 1);
    for (int d = c + 1; d <= 6; ++d) set_sym(costs, c, d, 1);
  }
}

}  // namespace

ReductionOutput gen_sat_planar6(const MonotoneCnf& cnf) {
  check_cnf_input(cnf);
  SatLayout s = sat_skeleton(cnf);
  auto& g = s.b.g;
  const auto& gad = s.b.out.gadgets;
  g.add_edge(0, gad[0][0], col(4));
  for (int i = 0; i + 1 < cnf.num_vars; ++i) g.add_edge(gad[i][2], gad[i + 1][0], col(4));
  auto colours = clause_colours(cnf);
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    const auto& c = cnf.clauses[j];
    for (int x : c.vars) {
      g.add_edge(s.clause[j], gad[x][c.positive ? 1 : 3], colours.at({static_cast<int>(j), x}));
    }
  }
  CostModel costs(6, true);
  planar_costs(costs);
  return s.b.finish(std::move(costs), 0);
}

ReductionOutput gen_sat_deg4(const MonotoneCnf& cnf) {
  check_cnf_input(cnf);
  SatLayout s = sat_skeleton(cnf);
  auto& b = s.b;
  auto& g = b.g;
  const auto gad = b.out.gadgets;
  g.add_edge(0, gad[0][0], col(4));
  // x_i' sits between consecutive gadgets; the last one hangs off x_n^r.
  std::vector<VertexId> prime;
  for (int i = 0; i < cnf.num_vars; ++i) {
    prime.push_back(b.vertex("x" + idx(i) + "_prime"));
    g.add_edge(gad[i][2], prime[i], col(4));
    if (i > 0) g.add_edge(prime[i - 1], gad[i][0], col(4));
  }
  auto colours = clause_colours(cnf);
  for (int i = 0; i < cnf.num_vars; ++i) {
    for (bool positive : {true, false}) {
      const std::string tag = positive ? "pos" : "neg";
      VertexId prev_lit = gad[i][positive ? 1 : 3];
      VertexId prev_ret = positive ? gad[i][2] : prime[i];
      int j = 0;
      for (std::size_t c = 0; c < cnf.clauses.size(); ++c) {
        const auto& cl = cnf.clauses[c];
        if (cl.positive != positive ||
            std::find(cl.vars.begin(), cl.vars.end(), i) == cl.vars.end()) {
          continue;
        }
        const std::string base = "x" + idx(i) + "_" + idx(j);
        VertexId lit = b.vertex(base + "_" + tag);
        VertexId ret = b.vertex(base + "_r" + tag);
        g.add_edge(prev_lit, lit, col(7));
        g.add_edge(prev_ret, ret, col(8));
        g.add_edge(lit, ret, col(8));
        g.add_edge(lit, s.clause[c], colours.at({static_cast<int>(c), i}));
        prev_lit = lit;
        prev_ret = ret;
        ++j;
      }
    }
  }
  CostModel costs(8, true);
  planar_costs(costs);
  for (int c = 1; c <= 6; ++c) set_sym(costs, 8, c, 0);
  set_sym(costs, 7, 8, 1);
  set_sym(costs, 1, 7, 1);
  set_sym(costs, 2, 7, 1);
  set_sym(costs, 3, 7, 0);
  for (int c = 4; c <= 6; ++c) set_sym(costs, 7, c, 1);
  return b.finish(std::move(costs), 0);
}

std::vector<int> extract_clique(const ReductionOutput& out, const Arborescence& tree) {
  const auto& in = out.instance;
  Cost cost = evaluate_cost(in, tree);
  if (cost > out.threshold) {
    throw Error("tree costs " + std::to_string(cost) + ", above the threshold " +
                std::to_string(out.threshold));
  }
  if (out.special.empty()) throw PreconditionError("output has no special selectors");
  std::vector<int> clique;
  for (std::size_t i = 0; i < out.special.size(); ++i) {
    const VertexId s = out.special[i];
    int found = -1;
    for (EdgeId id : in.graph.incident(s)) {
      VertexId c = in.graph.edge(id).other(s);
      if (out.occurrence[c] != static_cast<int>(i)) continue;
      if (tree.parent_edge[s] == id || tree.parent_edge[c] == id) {
        found = out.source[c];
        if (tree.parent_edge[s] == id) break;
      }
    }
    if (found < 0) {
      throw Error("special selector " + out.roles[s] + " has no tree edge to its left occurrence");
    }
    clique.push_back(found);
  }
  return clique;
}

std::vector<bool> extract_assignment(const ReductionOutput& out, const Arborescence& tree) {
  const auto& in = out.instance;
  Cost cost = evaluate_cost(in, tree);
  if (cost > out.threshold) {
    throw Error("tree costs " + std::to_string(cost) + ", above the threshold " +
                std::to_string(out.threshold));
  }
  std::vector<bool> value;
  for (std::size_t i = 0; i < out.gadgets.size(); ++i) {
    auto [l, p, r, m] = out.gadgets[i];
    VertexId pp = parent_vertex(in, tree, p), pm = parent_vertex(in, tree, m);
    if (pp == l && pm == p) {
      value.push_back(true);
    } else if (pm == l && pp == m) {
      value.push_back(false);
    } else {
      throw Error("gadget of x" + idx(static_cast<int>(i)) + " is crossed neither way");
    }
    (void)r;
  }
  return value;
}

}  // namespace mincca
