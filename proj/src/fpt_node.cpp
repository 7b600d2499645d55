// Table of a node from the tables of its children.
//
// Children split into A (bold, or thin with a neighbour outside the bag) and
// B (thin, all neighbours in the bag).  Cut edges of the node and of every A
// child are oriented jointly; bag vertices without an arc out of the bag pick
// a parent inside the bag, either along a bag edge or through one B child
// attached to the same two bag vertices (a red edge).  Which B child of a red
// class serves as the crossing is settled by a small DP over the bag forest.

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "fpt_internal.hpp"
#include "mincca/error.hpp"

namespace mincca {

namespace {

using detail::add_sat;
using detail::kInfinity;

constexpr VertexId kExit = -2;

enum class BKind { empty, single, same_vertex, pair };

struct BOption {
  TableKey key;
  Cost base = 0;
  std::vector<EdgeId> out_edges;  // edges whose bag endpoint becomes a parent
};

struct BChild {
  NodeId node = kNoNode;
  BKind kind = BKind::empty;
  VertexId at = -1;  // single and same_vertex
  VertexPair pair{-1, -1};
  EdgeId first_edge = kNoEdge;   // pair: the edge at pair.first
  EdgeId second_edge = kNoEdge;  // pair: the edge at pair.second
  std::vector<BOption> options;  // orientations that do not cross the child
};

struct ParentOption {
  bool red = false;
  EdgeId edge = kNoEdge;  // plain
  int red_class = -1;     // index into classes_
  VertexId head = -1;
};

struct Variant {
  EdgeId edge = kNoEdge;
  ColorId entry = 0;  // parent colour as seen by the vertex's children
  ColorId exit = 0;   // colour seen at the head
  Cost weight = 0;
  int member = -1;  // through B child
  TableKey key;     // its key
};

class NodeSolver {
public:
  NodeSolver(const Instance& instance, const DecompositionIndex& index, NodeId t,
             const std::vector<DPTable>& tables, bool allow_non_star)
      : inst_(instance),
        g_(instance.graph),
        costs_(instance.costs),
        index_(index),
        t_(t),
        tables_(tables),
        allow_non_star_(allow_non_star) {}

  DPTable run() {
    setup();
    table_.node = t_;
    table_.cut = index_.cut(t_);
    enumerate_arcs(0);
    return std::move(table_);
  }

private:
  struct Class {
    VertexPair pair;
    std::vector<int> members;  // indices into b_
  };

  const DPTable& table_of(NodeId c) const {
    const DPTable& tab = tables_.at(c);
    if (tab.node != c) throw std::logic_error("child table missing for node " + std::to_string(c));
    return tab;
  }

  TableKey key_for(NodeId c, const std::map<EdgeId, VertexId>& tails,
                   BoundaryPartition part) const {
    return TableKey{detail::orientation_from_tails(index_, c, tails), std::move(part)};
  }

  void setup() {
    bag_ = index_.bag(t_);
    std::sort(bag_.begin(), bag_.end());
    xi_.assign(g_.num_vertices(), -1);
    for (std::size_t i = 0; i < bag_.size(); ++i) xi_[bag_[i]] = static_cast<int>(i);

    std::map<VertexPair, int> class_of_pair;
    for (NodeId c : index_.children(t_)) {
      auto nbrs = index_.neighborhood(c);
      bool inside_bag =
          std::all_of(nbrs.begin(), nbrs.end(), [&](VertexId v) { return xi_[v] >= 0; });
      if (!index_.is_thin(c) || !inside_bag) {
        a_.push_back(c);
        continue;
      }
      BChild b;
      b.node = c;
      const auto& cut = index_.cut(c);
      const DPTable& tab = table_of(c);
      auto option = [&](std::vector<EdgeId> outs) {
        std::map<EdgeId, VertexId> tails;
        for (EdgeId id : outs) tails[id] = detail::inside_endpoint(index_, c, g_.edge(id));
        TableKey key = key_for(c, tails, {});
        if (const TableEntry* e = tab.find(key.orientation, key.partition)) {
          b.options.push_back(BOption{key, e->cost, outs});
        }
      };
      if (cut.empty()) {
        b.kind = BKind::empty;
        option({});
      } else if (cut.size() == 1) {
        b.kind = BKind::single;
        b.at = nbrs.at(0);
        option({cut[0]});
      } else if (nbrs.size() == 1) {
        b.kind = BKind::same_vertex;
        b.at = nbrs[0];
        option({cut[0]});
        option({cut[1]});
        option({cut[0], cut[1]});
      } else {
        b.kind = BKind::pair;
        b.pair = {nbrs[0], nbrs[1]};
        for (EdgeId id : cut) {
          const Edge& e = g_.edge(id);
          VertexId out = index_.in_subtree(c, e.u) ? e.v : e.u;
          (out == b.pair.first ? b.first_edge : b.second_edge) = id;
        }
        option({b.first_edge});
        option({b.second_edge});
        option({b.first_edge, b.second_edge});
        auto [it, fresh] = class_of_pair.emplace(b.pair, static_cast<int>(classes_.size()));
        if (fresh) classes_.push_back(Class{b.pair, {}});
        classes_[it->second].members.push_back(static_cast<int>(b_.size()));
      }
      b_.push_back(std::move(b));
    }

    // Parent options of bag vertices inside the bag.
    options_.assign(bag_.size(), {});
    for (std::size_t i = 0; i < bag_.size(); ++i) {
      VertexId v = bag_[i];
      std::vector<EdgeId> ids(g_.incident(v).begin(), g_.incident(v).end());
      std::sort(ids.begin(), ids.end());
      for (EdgeId id : ids) {
        VertexId w = g_.edge(id).other(v);
        if (xi_[w] >= 0) options_[i].push_back(ParentOption{false, id, -1, w});
      }
      for (std::size_t k = 0; k < classes_.size(); ++k) {
        const auto& p = classes_[k].pair;
        if (p.first == v) options_[i].push_back(ParentOption{true, kNoEdge, int(k), p.second});
        if (p.second == v) options_[i].push_back(ParentOption{true, kNoEdge, int(k), p.first});
      }
    }

    // Edges oriented jointly: the node's cut and the cuts of A children.
    std::set<EdgeId> star;
    for (EdgeId id : index_.cut(t_)) star.insert(id);
    for (NodeId c : a_) {
      for (EdgeId id : index_.cut(c)) star.insert(id);
    }
    star_edges_.assign(star.begin(), star.end());
    tail_used_.assign(g_.num_vertices(), 0);
  }

  // --- guess cascade ------------------------------------------------------

  void enumerate_arcs(std::size_t i) {
    if (i == star_edges_.size()) {
      after_arcs();
      return;
    }
    EdgeId id = star_edges_[i];
    const Edge& e = g_.edge(id);
    enumerate_arcs(i + 1);
    // For cut(t) edges the outside tail (inward) comes before the inside one.
    VertexId first = e.u, second = e.v;
    if (index_.in_subtree(t_, first) && !index_.in_subtree(t_, second)) std::swap(first, second);
    for (VertexId tail : {first, second}) {
      if (tail_used_[tail]) continue;
      tail_used_[tail] = 1;
      arcs_[id] = tail;
      enumerate_arcs(i + 1);
      arcs_.erase(id);
      tail_used_[tail] = 0;
    }
  }

  void after_arcs() {
    child_phi_.clear();
    child_rows_.clear();
    for (NodeId c : a_) {
      PartialOrientation phi = detail::orientation_from_tails(index_, c, arcs_);
      const DPTable& tab = table_of(c);
      auto it = tab.entries.find(phi);
      if (it == tab.entries.end() || it->second.empty()) return;
      child_phi_.push_back(std::move(phi));
      child_rows_.push_back(&it->second);
    }
    out_arc_.assign(bag_.size(), kNoEdge);
    for (auto [id, tail] : arcs_) {
      if (xi_[tail] >= 0) out_arc_[xi_[tail]] = id;
    }
    child_pick_.assign(a_.size(), nullptr);
    enumerate_child_partitions(0);
  }

  void enumerate_child_partitions(std::size_t i) {
    if (i == a_.size()) {
      guess_.assign(bag_.size(), -1);
      enumerate_parents(0);
      return;
    }
    for (const auto& item : *child_rows_[i]) {
      child_pick_[i] = &item;
      enumerate_child_partitions(i + 1);
    }
  }

  void enumerate_parents(std::size_t i) {
    if (i == bag_.size()) {
      evaluate();
      return;
    }
    if (out_arc_[i] != kNoEdge) {
      enumerate_parents(i + 1);
      return;
    }
    for (std::size_t k = 0; k < options_[i].size(); ++k) {
      guess_[i] = static_cast<int>(k);
      enumerate_parents(i + 1);
    }
    guess_[i] = -1;
  }

  // --- evaluation of one full guess ---------------------------------------

  void evaluate() {
    // Forest over bag vertices and boundary vertices of A children.
    std::map<VertexId, VertexId> next;
    auto arc_head = [&](EdgeId id, VertexId tail) {
      VertexId h = g_.edge(id).other(tail);
      return index_.in_subtree(t_, h) ? h : kExit;
    };
    for (std::size_t i = 0; i < bag_.size(); ++i) {
      VertexId v = bag_[i];
      next[v] = out_arc_[i] != kNoEdge ? arc_head(out_arc_[i], v) : options_[i][guess_[i]].head;
    }
    for (std::size_t j = 0; j < a_.size(); ++j) {
      NodeId c = a_[j];
      const auto& cut = index_.cut(c);
      const auto& part = child_pick_[j]->first;
      for (std::size_t k = 0; k < cut.size(); ++k) {
        if (child_phi_[j][k] == EdgeState::absent) continue;
        VertexId w = detail::inside_endpoint(index_, c, g_.edge(cut[k]));
        if (next.count(w)) continue;
        bool has_arc = false;
        for (EdgeId id : g_.incident(w)) {
          auto it = arcs_.find(id);
          if (it != arcs_.end() && it->second == w) {
            next[w] = arc_head(id, w);
            has_arc = true;
          }
        }
        if (has_arc) continue;
        auto it = std::lower_bound(part.begin(), part.end(), std::pair{w, -1});
        if (it == part.end() || it->first != w) throw std::logic_error("partition misses a leaf");
        next[w] = it->second;
      }
    }

    std::map<VertexId, VertexId> exit_of;
    for (const auto& [start, ignored] : next) {
      std::vector<VertexId> path;
      VertexId cur = start;
      for (;;) {
        if (auto it = exit_of.find(cur); it != exit_of.end()) {
          for (VertexId p : path) exit_of[p] = it->second;
          break;
        }
        if (std::find(path.begin(), path.end(), cur) != path.end()) return;  // cycle
        path.push_back(cur);
        auto nt = next.find(cur);
        if (nt == next.end()) throw std::logic_error("forest walk left the known vertices");
        if (nt->second == kExit) {
          for (VertexId p : path) exit_of[p] = cur;
          break;
        }
        cur = nt->second;
      }
    }

    // Induced key of t.
    std::map<EdgeId, VertexId> own;
    for (EdgeId id : index_.cut(t_)) {
      if (auto it = arcs_.find(id); it != arcs_.end()) own[id] = it->second;
    }
    PartialOrientation phi = detail::orientation_from_tails(index_, t_, own);
    BoundaryPartition part;
    for (auto [id, tail] : own) {
      if (index_.in_subtree(t_, tail)) continue;
      VertexId in = g_.edge(id).other(tail);
      part.emplace_back(in, exit_of.at(in));
    }
    std::sort(part.begin(), part.end());
    part.erase(std::unique(part.begin(), part.end()), part.end());

    if (!build_variants()) return;
    TableEntry entry;
    if (!best_completion(entry)) return;
    detail::offer(table_, phi, std::move(part), std::move(entry));
  }

  bool build_variants() {
    const std::size_t k = bag_.size();
    variants_.assign(k, {});
    fixed_.assign(k, {});
    kids_.assign(k, {});
    class_user_.assign(classes_.size(), -1);
    for (auto [id, tail] : arcs_) {
      VertexId head = g_.edge(id).other(tail);
      if (xi_[head] >= 0 && xi_[tail] < 0) fixed_[xi_[head]].push_back(g_.edge(id).color);
    }
    for (std::size_t i = 0; i < k; ++i) {
      VertexId v = bag_[i];
      if (out_arc_[i] != kNoEdge) {
        ColorId c = g_.edge(out_arc_[i]).color;
        variants_[i].push_back(Variant{out_arc_[i], c, c, 0, -1, {}});
        continue;
      }
      const ParentOption& opt = options_[i][guess_[i]];
      kids_[xi_[opt.head]].push_back(static_cast<int>(i));
      if (!opt.red) {
        ColorId c = g_.edge(opt.edge).color;
        variants_[i].push_back(Variant{opt.edge, c, c, 0, -1, {}});
        continue;
      }
      class_user_[opt.red_class] = static_cast<int>(i);
      for (int m : classes_[opt.red_class].members) {
        const BChild& b = b_[m];
        EdgeId e_in = b.pair.first == v ? b.first_edge : b.second_edge;
        EdgeId e_out = b.pair.first == v ? b.second_edge : b.first_edge;
        VertexId a = detail::inside_endpoint(index_, b.node, g_.edge(e_in));
        VertexId z = detail::inside_endpoint(index_, b.node, g_.edge(e_out));
        TableKey key = key_for(b.node, {{e_in, v}, {e_out, z}}, {{a, z}});
        const TableEntry* e = table_of(b.node).find(key.orientation, key.partition);
        if (!e) continue;
        variants_[i].push_back(
            Variant{e_in, g_.edge(e_in).color, g_.edge(e_out).color, e->cost, m, std::move(key)});
      }
      if (variants_[i].empty()) return false;
    }
    return true;
  }

  ColorId entry_colour(int i, const std::vector<int>& choice) const {
    return variants_[i][choice[i]].entry;
  }

  // Cheapest non-crossing orientation of B child m given the parent colours
  // of the bag vertices it attaches to.  Returns the option index or -1.
  std::pair<Cost, int> b_cost(int m, ColorId first_pc, ColorId second_pc) const {
    const BChild& b = b_[m];
    Cost best = kInfinity;
    int arg = -1;
    for (std::size_t o = 0; o < b.options.size(); ++o) {
      Cost c = b.options[o].base;
      for (EdgeId id : b.options[o].out_edges) {
        const Edge& e = g_.edge(id);
        bool at_first = b.kind != BKind::pair || id == b.first_edge;
        c += costs_.cost(at_first ? first_pc : second_pc, e.color);
      }
      if (c < best) {
        best = c;
        arg = static_cast<int>(o);
      }
    }
    return {best, arg};
  }

  VertexId attach_vertex(const BChild& b) const { return b.kind == BKind::pair ? -1 : b.at; }

  // Full cost of a choice of variants, with the witness when wanted.
  Cost direct_cost(const std::vector<int>& choice, TableEntry* entry) const {
    Cost total = 0;
    for (const auto* pick : child_pick_) total = add_sat(total, pick->second.cost);
    for (std::size_t i = 0; i < bag_.size(); ++i) {
      ColorId pc = entry_colour(static_cast<int>(i), choice);
      for (ColorId c : fixed_[i]) total = add_sat(total, costs_.cost(pc, c));
      for (int u : kids_[i]) {
        const Variant& var = variants_[u][choice[u]];
        total = add_sat(total, costs_.cost(pc, var.exit));
        total = add_sat(total, var.weight);
      }
    }
    std::vector<int> through(b_.size(), -1);
    for (std::size_t i = 0; i < bag_.size(); ++i) {
      const Variant& var = variants_[i][choice[i]];
      if (var.member >= 0) through[var.member] = static_cast<int>(i);
    }
    std::vector<std::pair<NodeId, TableKey>> b_keys;
    for (std::size_t m = 0; m < b_.size(); ++m) {
      const BChild& b = b_[m];
      if (through[m] >= 0) {
        b_keys.emplace_back(b.node, variants_[through[m]][choice[through[m]]].key);
        continue;
      }
      ColorId first_pc = 0, second_pc = 0;
      if (b.kind == BKind::pair) {
        first_pc = entry_colour(xi_[b.pair.first], choice);
        second_pc = entry_colour(xi_[b.pair.second], choice);
      } else if (b.kind != BKind::empty) {
        first_pc = second_pc = entry_colour(xi_[b.at], choice);
      }
      auto [c, o] = b_cost(static_cast<int>(m), first_pc, second_pc);
      if (o < 0) return kInfinity;
      total = add_sat(total, c);
      b_keys.emplace_back(b.node, b.options[o].key);
    }
    if (entry) {
      entry->cost = total;
      entry->parents.clear();
      for (std::size_t i = 0; i < bag_.size(); ++i) {
        entry->parents.emplace_back(bag_[i], variants_[i][choice[i]].edge);
      }
      entry->child_keys.clear();
      for (std::size_t j = 0; j < a_.size(); ++j) {
        entry->child_keys.emplace_back(a_[j], TableKey{child_phi_[j], child_pick_[j]->first});
      }
      for (auto& kv : b_keys) entry->child_keys.push_back(std::move(kv));
    }
    return total;
  }

  bool red_parent(int i) const { return variants_[i].front().member >= 0; }

  bool best_completion(TableEntry& entry) {
    const int k = static_cast<int>(bag_.size());
    // Red classes outside the forest are charged at their endpoint with a red
    // parent.  If both endpoints have red parents the charge couples two
    // choices and the forest DP does not apply.
    std::vector<std::vector<int>> unary_members(k);
    bool coupled = false;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (class_user_[c] >= 0) continue;
      int x = xi_[classes_[c].pair.first], y = xi_[classes_[c].pair.second];
      if (red_parent(x) && red_parent(y)) {
        coupled = true;
        break;
      }
      int owner = red_parent(y) ? y : x;
      for (int m : classes_[c].members) unary_members[owner].push_back(m);
    }
    std::vector<int> choice(k, 0);
    if (coupled) {
      if (!allow_non_star_) {
        throw std::logic_error("red edges outside the forest couple two red parents at node " +
                               std::to_string(t_));
      }
      return exhaustive_completion(entry);
    }

    // Bottom-up over the bag forest; deepest vertices first.
    std::vector<int> depth(k, 0), order(k);
    for (int i = 0; i < k; ++i) {
      int d = 0;
      for (int cur = i; out_arc_[cur] == kNoEdge; cur = xi_[options_[cur][guess_[cur]].head]) ++d;
      depth[i] = d;
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });

    std::vector<std::vector<Cost>> best(k);
    std::vector<std::vector<std::vector<int>>> pick(k);  // per variant, chosen variant per kid
    for (int i : order) {
      const auto& vars = variants_[i];
      best[i].assign(vars.size(), 0);
      pick[i].assign(vars.size(), {});
      for (std::size_t a = 0; a < vars.size(); ++a) {
        ColorId pc = vars[a].entry;
        Cost val = 0;
        for (ColorId c : fixed_[i]) val = add_sat(val, costs_.cost(pc, c));
        for (std::size_t m = 0; m < b_.size(); ++m) {
          if (attach_vertex(b_[m]) != bag_[i]) continue;
          val = add_sat(val, b_cost(static_cast<int>(m), pc, pc).first);
        }
        for (int m : unary_members[i]) {
          const BChild& b = b_[m];
          int other = xi_[b.pair.first] == i ? xi_[b.pair.second] : xi_[b.pair.first];
          ColorId opc = variants_[other].front().entry;
          bool first_is_me = xi_[b.pair.first] == i;
          val = add_sat(val, b_cost(m, first_is_me ? pc : opc, first_is_me ? opc : pc).first);
        }
        for (int u : kids_[i]) {
          Cost best_u = kInfinity;
          int arg = -1;
          for (std::size_t bv = 0; bv < variants_[u].size(); ++bv) {
            const Variant& var = variants_[u][bv];
            Cost c = add_sat(best[u][bv], costs_.cost(pc, var.exit));
            c = add_sat(c, var.weight);
            if (var.member >= 0) {
              const ParentOption& opt = options_[u][guess_[u]];
              ColorId upc = var.entry;
              for (int m : classes_[opt.red_class].members) {
                if (m == var.member) continue;
                const BChild& b = b_[m];
                bool u_first = b.pair.first == bag_[u];
                c = add_sat(c, b_cost(m, u_first ? upc : pc, u_first ? pc : upc).first);
              }
            }
            if (c < best_u) {
              best_u = c;
              arg = static_cast<int>(bv);
            }
          }
          if (arg < 0) {
            val = kInfinity;
            break;
          }
          val = add_sat(val, best_u);
          pick[i][a].push_back(arg);
        }
        best[i][a] = val;
      }
    }

    Cost total = 0;
    for (const auto* p : child_pick_) total = add_sat(total, p->second.cost);
    std::function<void(int, int)> assign = [&](int i, int a) {
      choice[i] = a;
      for (std::size_t j = 0; j < kids_[i].size(); ++j) assign(kids_[i][j], pick[i][a][j]);
    };
    for (int i = 0; i < k; ++i) {
      if (out_arc_[i] == kNoEdge) continue;
      auto it = std::min_element(best[i].begin(), best[i].end());
      total = add_sat(total, *it);
      if (*it >= kInfinity) return false;
      assign(i, static_cast<int>(it - best[i].begin()));
    }
    if (total >= kInfinity) return false;
    Cost check = direct_cost(choice, &entry);
    if (check != total) {
      throw std::logic_error("forest DP disagrees with direct evaluation at node " +
                             std::to_string(t_));
    }
    return true;
  }

  bool exhaustive_completion(TableEntry& entry) {
    const int k = static_cast<int>(bag_.size());
    std::vector<int> choice(k, 0), best_choice;
    Cost best = kInfinity;
    std::function<void(int)> rec = [&](int i) {
      if (i == k) {
        Cost c = direct_cost(choice, nullptr);
        if (c < best) {
          best = c;
          best_choice = choice;
        }
        return;
      }
      for (std::size_t a = 0; a < variants_[i].size(); ++a) {
        choice[i] = static_cast<int>(a);
        rec(i + 1);
      }
    };
    rec(0);
    if (best >= kInfinity) return false;
    direct_cost(best_choice, &entry);
    return true;
  }

  const Instance& inst_;
  const ColoredMultigraph& g_;
  const CostModel& costs_;
  const DecompositionIndex& index_;
  NodeId t_;
  const std::vector<DPTable>& tables_;
  bool allow_non_star_;

  DPTable table_;
  std::vector<VertexId> bag_;
  std::vector<int> xi_;
  std::vector<NodeId> a_;
  std::vector<BChild> b_;
  std::vector<Class> classes_;
  std::vector<std::vector<ParentOption>> options_;
  std::vector<EdgeId> star_edges_;

  // Current guess.
  std::vector<char> tail_used_;
  std::map<EdgeId, VertexId> arcs_;
  std::vector<PartialOrientation> child_phi_;
  std::vector<const std::map<BoundaryPartition, TableEntry>*> child_rows_;
  std::vector<const std::pair<const BoundaryPartition, TableEntry>*> child_pick_;
  std::vector<EdgeId> out_arc_;
  std::vector<int> guess_;

  // Derived per guess.
  std::vector<std::vector<Variant>> variants_;
  std::vector<std::vector<ColorId>> fixed_;
  std::vector<std::vector<int>> kids_;
  std::vector<int> class_user_;
};

}  // namespace

DPTable internal_table(const Instance& instance, const DecompositionIndex& index, NodeId t,
                       const std::vector<DPTable>& tables, bool allow_non_star) {
  index.check_node(t);
  return NodeSolver(instance, index, t, tables, allow_non_star).run();
}

}  // namespace mincca
