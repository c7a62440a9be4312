#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "latgraph/multigraph.hpp"
#include "latgraph/numeric.hpp"

using namespace latgraph;

namespace {

const char* kTriangle = "v 3\ne 0 1\ne 0 2\ne 1 2\n";
const char* kTheta = "v 2\ne 0 1\ne 0 1\ne 0 1\n";

MultiGraph graph(const char* text) { return parse_edge_list(text); }

}  // namespace

TEST_CASE("parse_edge_list accepts comments and round-trips") {
  MultiGraph g = graph("# a triangle\nv 3\ne 0 1\n\ne 0 2\ne 1 2\n");
  CHECK(g.vertex_count == 3);
  CHECK(g.edge_count() == 3);
  CHECK(parse_edge_list(format_edge_list(g)).edges == g.edges);
}

TEST_CASE("parse_edge_list rejects malformed input") {
  CHECK_THROWS_AS(graph(""), parse_error);
  CHECK_THROWS_AS(graph("v 2\ne 0 2\n"), parse_error);    // endpoint range
  CHECK_THROWS_AS(graph("v 2\ne 0 0\n"), parse_error);    // loop
  CHECK_THROWS_AS(graph("e 0 1\nv 2\n"), parse_error);    // header order
  CHECK_THROWS_AS(graph("v 2\ne 0\n"), parse_error);      // arity
  CHECK_THROWS_AS(graph("v 2\nx 0 1\n"), parse_error);    // unknown record
}

TEST_CASE("connectivity and cut-edge detection") {
  CHECK(is_connected(graph(kTriangle)));
  CHECK_FALSE(is_connected(graph("v 4\ne 0 1\ne 2 3\n")));
  CHECK(is_two_edge_connected(graph(kTriangle)));
  CHECK(is_two_edge_connected(graph(kTheta)));

  MultiGraph path = graph("v 3\ne 0 1\ne 1 2\n");
  CHECK_FALSE(is_two_edge_connected(path));
  CHECK(cut_edges(path) == std::vector<bool>{true, true});

  // a bridge between two triangles
  MultiGraph dumbbell = graph(
      "v 6\ne 0 1\ne 0 2\ne 1 2\ne 2 3\ne 3 4\ne 3 5\ne 4 5\n");
  std::vector<bool> cuts = cut_edges(dumbbell);
  CHECK(cuts == std::vector<bool>{false, false, false, true,
                                  false, false, false});
}

TEST_CASE("contract_cut_edges keeps the cycle-carrying part") {
  MultiGraph dumbbell = graph(
      "v 6\ne 0 1\ne 0 2\ne 1 2\ne 2 3\ne 3 4\ne 3 5\ne 4 5\n");
  Contraction c = contract_cut_edges(dumbbell);
  CHECK(c.graph.vertex_count == 5);
  CHECK(c.graph.edge_count() == 6);
  CHECK(c.edge_ids == std::vector<int>{0, 1, 2, 4, 5, 6});
  CHECK(c.vertex_map[2] == c.vertex_map[3]);
  CHECK(is_two_edge_connected(c.graph));

  // a tree contracts to a point
  Contraction t = contract_cut_edges(graph("v 3\ne 0 1\ne 1 2\n"));
  CHECK(t.graph.vertex_count == 1);
  CHECK(t.graph.edge_count() == 0);
}

TEST_CASE("layered_forest on the triangle") {
  MultiGraph g = graph(kTriangle);
  ForestData fd = layered_forest(g);
  CHECK(fd.forest.layer == std::vector<int>{0, 1, 2});
  CHECK(fd.forest.in_forest == std::vector<bool>{true, false, true});
  // o1 points from the lower layer to the higher one
  CHECK(fd.o1.direction == std::vector<int>{1, 1, 1});
  // o2 reverses exactly the non-forest edges
  CHECK(fd.o2.direction == std::vector<int>{1, -1, 1});
}

TEST_CASE("layered_forest invariants on a corpus") {
  for (const MultiGraph& g : enumerate_multigraphs(6, false)) {
    ForestData fd = layered_forest(g);
    int forest_edges = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [u, v] = g.edges[e];
      int lu = fd.forest.layer[u], lv = fd.forest.layer[v];
      CHECK(lu != lv);  // no edge joins a layer to itself
      if (fd.forest.in_forest[e]) {
        CHECK(std::abs(lu - lv) == 1);
        ++forest_edges;
      }
      // orientations agree on forest edges, o2 flips the rest
      CHECK(fd.o2.direction[e] ==
            (fd.forest.in_forest[e] ? fd.o1.direction[e]
                                    : -fd.o1.direction[e]));
    }
    // spanning forest size
    std::set<int> comps;
    std::vector<int> comp = components_excluding(g, {});
    for (int v = 0; v < g.vertex_count; ++v) comps.insert(comp[v]);
    CHECK(forest_edges == g.vertex_count - static_cast<int>(comps.size()));
  }
}

TEST_CASE("fundamental cuts and cycles pair trivially") {
  for (const MultiGraph& g : enumerate_multigraphs(5, true)) {
    ForestData fd = layered_forest(g);
    for (int e = 0; e < g.edge_count(); ++e) {
      if (!fd.forest.in_forest[e]) continue;
      std::vector<int> cut(g.edge_count(), 0);
      for (const SignedEdge& se : fundamental_cut(g, fd, e))
        cut[se.edge] = se.sign;
      CHECK(cut[e] != 0);
      for (int f = 0; f < g.edge_count(); ++f) {
        if (fd.forest.in_forest[f]) continue;
        std::vector<int> cyc(g.edge_count(), 0);
        for (const SignedEdge& se : fundamental_cycle(g, fd, f))
          cyc[se.edge] = se.sign;
        CHECK(cyc[f] != 0);
        int inner = 0;
        for (int i = 0; i < g.edge_count(); ++i) inner += cut[i] * cyc[i];
        CHECK(inner == 0);  // cut rows and cycle rows are orthogonal
      }
    }
  }
}

TEST_CASE("cycle_space has dimension E - V + 1 on connected graphs") {
  MultiGraph g = graph(kTheta);
  CHECK(cycle_space_basis(g).size() == 2);
  CHECK(cycle_space(g).size() == 4);
  CHECK(cycle_space_basis(graph(kTriangle)).size() == 1);
}

TEST_CASE("whitney_switch produces a 2-isomorphic graph") {
  // two triangles sharing vertices 0 and 2
  MultiGraph g = graph("v 4\ne 0 1\ne 1 2\ne 0 2\ne 2 3\ne 0 3\n");
  std::vector<bool> side = {false, false, false, true, true};
  MultiGraph h = whitney_switch(g, side, 0, 2);
  CHECK(h.edge_count() == g.edge_count());
  EdgeBijection id;
  for (int e = 0; e < g.edge_count(); ++e) id.pairs.push_back({e, e});
  CHECK(verify_two_isomorphism(g, h, id));
  CHECK_THROWS_AS(whitney_switch(g, {true, false, false, false, false}, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("verify_two_isomorphism separates triangle from theta") {
  MultiGraph tri = graph(kTriangle);
  MultiGraph theta = graph(kTheta);
  EdgeBijection id{{{0, 0}, {1, 1}, {2, 2}}};
  CHECK(verify_two_isomorphism(tri, tri, id));
  CHECK_FALSE(verify_two_isomorphism(tri, theta, id));
  EdgeBijection bad{{{0, 0}, {1, 0}, {2, 2}}};
  CHECK_THROWS_AS(verify_two_isomorphism(tri, tri, bad),
                  std::invalid_argument);
}

TEST_CASE("brute_force_two_isomorphism on small pairs") {
  MultiGraph tri = graph(kTriangle);
  auto self = brute_force_two_isomorphism(tri, tri);
  REQUIRE(self.has_value());
  CHECK(verify_two_isomorphism(tri, tri, *self));
  CHECK_FALSE(brute_force_two_isomorphism(tri, graph(kTheta)).has_value());

  // trees are 2-isomorphic to each other (empty cycle part)
  auto trees = brute_force_two_isomorphism(graph("v 3\ne 0 1\ne 1 2\n"),
                                           graph("v 3\ne 0 1\ne 0 2\n"));
  REQUIRE(trees.has_value());
  CHECK(trees->pairs.empty());
}

TEST_CASE("enumerate_multigraphs counts by class") {
  std::vector<int> all, twoec;
  for (int n = 0; n <= 5; ++n) {
    all.push_back(static_cast<int>(enumerate_multigraphs(n, false).size()));
    twoec.push_back(static_cast<int>(enumerate_multigraphs(n, true).size()));
  }
  CHECK(all == std::vector<int>{1, 2, 4, 9, 21, 54});
  CHECK(twoec == std::vector<int>{1, 1, 2, 4, 8, 16});
  for (const MultiGraph& g : enumerate_multigraphs(4, true)) {
    CHECK(is_connected(g));
    CHECK(is_two_edge_connected(g));
  }
}

TEST_CASE("components_excluding splits at articulation sets") {
  MultiGraph g = graph("v 4\ne 0 1\ne 1 2\ne 0 2\ne 2 3\ne 0 3\n");
  std::vector<int> comp = components_excluding(g, {0, 2});
  CHECK(comp[0] == -1);
  CHECK(comp[2] == -1);
  CHECK(comp[1] != comp[3]);
}
