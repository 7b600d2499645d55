#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "mincca/error.hpp"
#include "mincca/treecut.hpp"
#include "mincca/treecut_gen.hpp"
#include "support.hpp"

using namespace mincca;
using namespace mincca::testing;

namespace {

ColoredMultigraph path4() {
  ColoredMultigraph g(4);
  g.add_edge(0, 1, 0);
  g.add_edge(1, 2, 0);
  g.add_edge(2, 3, 0);
  return g;
}

ColoredMultigraph cycle4() {
  ColoredMultigraph g(4);
  g.add_edge(0, 1, 0);
  g.add_edge(1, 2, 0);
  g.add_edge(2, 3, 0);
  g.add_edge(3, 0, 0);
  return g;
}

TreeCutDecomposition centre_with_leaves(std::vector<VertexId> centre, std::vector<VertexId> leaves) {
  TreeCutDecomposition tcd;
  NodeId top = tcd.add_node(kNoNode, std::move(centre));
  for (VertexId v : leaves) tcd.add_node(top, {v});
  return tcd;
}

}  // namespace

TEST_CASE("validation") {
  auto g = path4();
  TreeCutDecomposition single;
  single.add_node(kNoNode, {0, 1, 2, 3});
  CHECK(validate_decomposition(g, single).ok());

  TreeCutDecomposition dup = centre_with_leaves({0, 1, 2}, {2, 3});
  auto r = validate_decomposition(g, dup);
  CHECK_FALSE(r.disjoint);

  TreeCutDecomposition missing = centre_with_leaves({0, 1}, {2});
  CHECK_FALSE(validate_decomposition(g, missing).covering);

  TreeCutDecomposition two_roots;
  two_roots.add_node(kNoNode, {0, 1});
  two_roots.add_node(kNoNode, {2, 3});
  CHECK_FALSE(validate_decomposition(g, two_roots).tree);

  CHECK_THROWS_AS(DecompositionIndex(g, dup), StructureError);
}

TEST_CASE("adhesion") {
  auto g = path4();
  auto tcd = centre_with_leaves({1, 2}, {0, 3});
  CHECK(adhesion(g, tcd, 0) == 0);
  CHECK(adhesion(g, tcd, 1) == 1);
  CHECK(adhesion(g, tcd, 2) == 1);
  CHECK_THROWS(adhesion(g, tcd, 5));
}

TEST_CASE("torso of the three worked examples") {
  SUBCASE("single node") {
    auto g = cycle4();
    TreeCutDecomposition tcd;
    tcd.add_node(kNoNode, {0, 1, 2, 3});
    auto t = torso(g, tcd, 0);
    CHECK(t.size() == 4);
    CHECK(t.edges.size() == 4);
    CHECK(width(g, tcd) == 4);
  }
  SUBCASE("path with two leaves") {
    auto g = path4();
    auto tcd = centre_with_leaves({1, 2}, {0, 3});
    auto t = torso(g, tcd, 0);
    CHECK(t.size() == 2);
    CHECK(torso_edges(t) == std::multiset<std::pair<int, int>>{{1, 2}});
    CHECK(width(g, tcd) == 2);
  }
  SUBCASE("cycle with two leaves") {
    auto g = cycle4();
    auto tcd = centre_with_leaves({0, 2}, {1, 3});
    auto t = torso(g, tcd, 0);
    CHECK(t.size() == 2);
    CHECK(torso_edges(t) == std::multiset<std::pair<int, int>>{{0, 2}, {0, 2}});
    // A leaf keeps the outside as a vertex with two parallel edges.
    CHECK(torso(g, tcd, 1).size() == 2);
    CHECK(adhesion(g, tcd, 1) == 2);
    CHECK(width(g, tcd) == 2);
  }
}

TEST_CASE("torso agrees with a direct implementation under any rule order") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    int n = 3 + round % 5;
    auto g = random_connected_graph(rng, n, round % 6, 1);
    auto tcd = random_decomposition(rng, n, 4);
    DecompositionIndex index(g, tcd);
    for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
      std::vector<std::vector<VertexId>> groups;
      std::vector<VertexId> outside;
      for (VertexId v = 0; v < n; ++v) {
        if (!index.in_subtree(t, v)) outside.push_back(v);
      }
      groups.push_back(outside);
      for (NodeId c : index.children(t)) groups.push_back(index.subtree_vertices(c));
      std::size_t naive_size = 0;
      auto expected = naive_torso(g, tcd.bags[t], groups, &naive_size);
      auto base = torso(g, tcd, t);
      CHECK(base.size() == static_cast<int>(naive_size));
      CHECK(canonical(torso_edges(base)) == canonical(expected));
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto shuffled = torso(g, tcd, t, seed);
        CHECK(shuffled.size() == base.size());
        CHECK(canonical(torso_edges(shuffled)) == canonical(expected));
      }
    }
  }
}

TEST_CASE("subtree recursion and root adhesion") {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 50; ++round) {
    int n = 2 + round % 6;
    auto g = random_connected_graph(rng, n, 3, 2);
    auto tcd = random_decomposition(rng, n, 5);
    DecompositionIndex index(g, tcd);
    CHECK(index.subtree_vertices(index.root()).size() == static_cast<std::size_t>(n));
    CHECK(adhesion(g, tcd, index.root()) == 0);
    for (NodeId t = 0; t < tcd.num_nodes(); ++t) {
      std::vector<VertexId> parts = tcd.bags[t];
      for (NodeId c : index.children(t)) {
        for (VertexId v : index.subtree_vertices(c)) parts.push_back(v);
      }
      std::sort(parts.begin(), parts.end());
      CHECK(parts == index.subtree_vertices(t));
    }
  }
}

TEST_CASE("niceness") {
  // Leaves {1} and {3} hang off centre {0, 2}; each has adhesion 2.
  auto g = cycle4();
  auto tcd = centre_with_leaves({0, 2}, {1, 3});
  CHECK(is_nice(g, tcd).nice);
  // Path 0-1-2 under centre {0}: leaf {1} is thin and adjacent to sibling {2}.
  ColoredMultigraph p(3);
  p.add_edge(0, 1, 0);
  p.add_edge(1, 2, 0);
  auto bad = centre_with_leaves({0}, {1, 2});
  auto r = is_nice(p, bad);
  CHECK_FALSE(r.nice);
  REQUIRE_FALSE(r.offending.empty());
  CHECK((r.offending.front() == std::pair<NodeId, NodeId>{1, 2} ||
         r.offending.front() == std::pair<NodeId, NodeId>{2, 1}));
}

TEST_CASE("child classification and red edges") {
  // Centre {0, 1, 2}; leaf {3} sees 0 and 1, leaf {4} sees 0 and 1, and
  // node {5, 6} is joined to the centre by three edges.
  ColoredMultigraph g(7);
  g.add_edge(0, 1, 0);
  g.add_edge(3, 0, 0);
  g.add_edge(3, 1, 0);
  g.add_edge(4, 0, 0);
  g.add_edge(4, 1, 0);
  g.add_edge(5, 6, 0);
  g.add_edge(5, 0, 0);
  g.add_edge(6, 1, 0);
  g.add_edge(6, 2, 0);
  TreeCutDecomposition tcd;
  tcd.add_node(kNoNode, {0, 1, 2});
  tcd.add_node(0, {3});
  tcd.add_node(0, {4});
  tcd.add_node(0, {5, 6});

  auto a = classify_children(g, tcd, 0);
  CHECK(a.b_children == std::vector<NodeId>{1, 2});
  CHECK(a.a_children == std::vector<NodeId>{3});
  CHECK(a.b_groups.at({0, 1}) == std::vector<NodeId>{1, 2});
  CHECK(classify_children(g, tcd, 1).a_children.empty());
  CHECK(classify_children(g, tcd, 1).b_children.empty());

  auto hat = hat_graph(g, tcd, 0);
  int red = 0, plain = 0;
  for (const auto& e : hat.edges) (e.red ? red : plain)++;
  CHECK(red == 2);
  CHECK(plain == 1);
  // Red 0-1 twice plus plain 0-1: one component covered by vertex 0.
  CHECK(is_star_forest(hat));
  CHECK(hat_graph(g, tcd, 1).edges.empty());
}

TEST_CASE("star recognition") {
  HatGraph tri{{0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}};
  CHECK_FALSE(is_star_forest(tri));
  HatGraph p3{{0, 1, 2}, {{0, 1}, {1, 2}}};
  CHECK(is_star_forest(p3));
  HatGraph multi{{0, 1}, {{0, 1}, {1, 0}, {0, 1}}};
  CHECK(is_star_forest(multi));
  HatGraph p4{{0, 1, 2, 3}, {{0, 1}, {1, 2}, {2, 3}}};
  CHECK_FALSE(is_star_forest(p4));

  ColoredMultigraph g(3);
  g.add_edge(0, 1, 0);
  g.add_edge(1, 2, 0);
  g.add_edge(2, 0, 0);
  TreeCutDecomposition tcd;
  tcd.add_node(kNoNode, {0, 1, 2});
  auto r = is_star_decomposition(g, tcd);
  CHECK_FALSE(r.star);
  CHECK(r.offending == 0);
}

TEST_CASE("exhaustive tree-cutwidth") {
  ColoredMultigraph one(1);
  CHECK(exhaustive_tcw(one).width == 1);

  ColoredMultigraph edge(2);
  edge.add_edge(0, 1, 0);
  auto e = exhaustive_tcw(edge);
  CHECK(e.width <= 2);
  CHECK(width(edge, e.decomposition) == e.width);

  auto c = exhaustive_tcw(cycle4());
  CHECK(c.width <= 2);
  CHECK(validate_decomposition(cycle4(), c.decomposition).ok());
  CHECK(width(cycle4(), c.decomposition) == c.width);

  ColoredMultigraph seven(7);
  for (VertexId v = 1; v < 7; ++v) seven.add_edge(v - 1, v, 0);
  CHECK_THROWS_AS(exhaustive_tcw(seven), SizeError);
}

TEST_CASE("exhaustive width lower-bounds random decompositions") {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 40; ++round) {
    int n = 2 + round % 4;
    auto g = random_connected_graph(rng, n, round % 4, 1);
    int best = exhaustive_tcw(g).width;
    for (int k = 0; k < 10; ++k) {
      auto tcd = random_decomposition(rng, n, 4);
      CHECK(width(g, tcd) >= best);
    }
  }
}

TEST_CASE("generator outputs") {
  GenParams single;
  single.shape = GenParams::Shape::single_node;
  single.bag_size = 5;
  auto s = gen_graph_with_decomposition(single, 1);
  CHECK(s.decomposition.num_nodes() == 1);
  CHECK(s.instance.graph.num_vertices() == 5);

  GenParams star;
  star.shape = GenParams::Shape::centre_leaves;
  star.num_leaves = 6;
  auto c = gen_graph_with_decomposition(star, 2);
  CHECK(is_nice(c.instance.graph, c.decomposition).nice);
  CHECK(is_star_decomposition(c.instance.graph, c.decomposition).star);

  GenParams p;
  CHECK(gen_graph_with_decomposition(p, 42).instance == gen_graph_with_decomposition(p, 42).instance);
  CHECK(gen_graph_with_decomposition(p, 42).decomposition ==
        gen_graph_with_decomposition(p, 42).decomposition);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gi = gen_graph_with_decomposition(p, seed);
    const auto& g = gi.instance.graph;
    CHECK(validate_decomposition(g, gi.decomposition).ok());
    CHECK(is_nice(g, gi.decomposition).nice);
    CHECK(is_star_decomposition(g, gi.decomposition).star);
    CHECK(g.connected());
    CHECK(g.num_vertices() <= p.max_vertices);
  }

  GenParams impossible;
  impossible.shape = GenParams::Shape::single_node;
  impossible.bag_size = 1;
  impossible.max_vertices = 0;
  impossible.max_attempts = 5;
  CHECK_THROWS_AS(gen_graph_with_decomposition(impossible, 0), PreconditionError);
}
