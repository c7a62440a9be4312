#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "latgraph/reconstruction.hpp"

using namespace latgraph;

namespace {

const char* kTriangle = "v 3\ne 0 1\ne 0 2\ne 1 2\n";
const char* kTheta = "v 2\ne 0 1\ne 0 1\ne 0 1\n";

}  // namespace

TEST_CASE("d_equivalent is reflexive and separates triangle from theta") {
  MultiGraph tri = parse_edge_list(kTriangle);
  MultiGraph theta = parse_edge_list(kTheta);
  CHECK(d_equivalent(tri, tri).has_value());
  CHECK(d_equivalent(theta, theta).has_value());
  // same discriminant group and tree count, but opposite d-values
  CHECK_FALSE(d_equivalent(tri, theta).has_value());
  CHECK_FALSE(d_equivalent(theta, tri).has_value());
}

TEST_CASE("sign_normalize flips mixed-free unit rows") {
  QMat units = {{Rat(0), Rat(-1)}, {Rat(1), Rat(0)}};
  QMat embedded = {{Rat(1), Rat(1)}};
  QMat out = sign_normalize(units, embedded);
  CHECK(out == QMat{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
  // a +2 pairing is rejected
  QMat bad = {{Rat(1), Rat(1)}};
  CHECK_THROWS_AS(sign_normalize(bad, QMat{{Rat(1), Rat(1)}}),
                  internal_error);
}

TEST_CASE("atom_match pairs equal support patterns in order") {
  SupportPattern a{{true, false}};
  SupportPattern b{{false, true}};
  auto m = atom_match({a, b, a}, {b, a, a});
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 2}});
  CHECK_THROWS_AS(atom_match({a, a}, {a, b}), internal_error);
}

TEST_CASE("reconstruction on identical graphs") {
  for (const char* text : {kTriangle, kTheta, "v 2\ne 0 1\ne 0 1\n"}) {
    MultiGraph g = parse_edge_list(text);
    auto f = reconstruct_two_isomorphism(g, g);
    REQUIRE(f.has_value());
    CHECK(verify_two_isomorphism(g, g, *f));
  }
}

TEST_CASE("reconstruction ignores tree parts and cut edges") {
  MultiGraph g = parse_edge_list(kTriangle);
  // triangle with a pendant edge
  MultiGraph h = parse_edge_list("v 4\ne 0 1\ne 0 2\ne 1 2\ne 2 3\n");
  auto f = reconstruct_two_isomorphism(g, h);
  REQUIRE(f.has_value());
  CHECK(f->pairs.size() == 3);
  for (auto [a, b] : f->pairs) CHECK(b < 3);

  // two trees are trivially equivalent
  auto t = reconstruct_two_isomorphism(parse_edge_list("v 2\ne 0 1\n"),
                                       parse_edge_list("v 3\ne 0 1\ne 1 2\n"));
  REQUIRE(t.has_value());
  CHECK(t->pairs.empty());
}

TEST_CASE("reconstruction on a Whitney switch pair") {
  MultiGraph g = parse_edge_list("v 4\ne 0 1\ne 1 2\ne 0 2\ne 2 3\ne 0 3\n");
  MultiGraph h = whitney_switch(g, {false, false, false, true, true}, 0, 2);
  auto f = reconstruct_two_isomorphism(g, h);
  REQUIRE(f.has_value());
  CHECK(verify_two_isomorphism(g, h, *f));
}

TEST_CASE("reconstruction agrees with brute force on the small corpus") {
  std::vector<MultiGraph> corpus = enumerate_multigraphs(5, true);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i; j < corpus.size(); ++j) {
      auto rec = reconstruct_two_isomorphism(corpus[i], corpus[j]);
      auto ref = brute_force_two_isomorphism(corpus[i], corpus[j]);
      CHECK(rec.has_value() == ref.has_value());
      if (rec) CHECK(verify_two_isomorphism(corpus[i], corpus[j], *rec));
    }
}

TEST_CASE("reconstruction round-trips random Whitney switches") {
  std::mt19937 rng(7);
  std::vector<MultiGraph> corpus;
  for (const MultiGraph& g : enumerate_multigraphs(7, true))
    if (g.edge_count() >= 4 && g.vertex_count >= 4) corpus.push_back(g);
  REQUIRE(!corpus.empty());
  int done = 0;
  for (int trial = 0; trial < 400 && done < 60; ++trial) {
    const MultiGraph& g = corpus[rng() % corpus.size()];
    int v = static_cast<int>(rng() % g.vertex_count);
    int w = static_cast<int>(rng() % g.vertex_count);
    if (v == w) continue;
    std::vector<int> comp = components_excluding(g, {v, w});
    int parts = 0;
    for (int c : comp) parts = std::max(parts, c + 1);
    if (parts < 2) continue;
    int keep = static_cast<int>(rng() % parts);
    std::vector<bool> side(g.edge_count(), false);
    bool any = false, all = true;
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.edges[e];
      bool in = (comp[a] == keep || (comp[a] == -1 && comp[b] == keep) ||
                 (comp[a] == -1 && comp[b] == -1 && keep == 0));
      side[e] = in;
      any = any || in;
      all = all && in;
    }
    if (!any || all) continue;
    MultiGraph h;
    try {
      h = whitney_switch(g, side, v, w);
    } catch (const std::invalid_argument&) {
      continue;
    }
    auto f = reconstruct_two_isomorphism(g, h);
    REQUIRE(f.has_value());
    CHECK(verify_two_isomorphism(g, h, *f));
    ++done;
  }
  CHECK(done >= 30);
}

TEST_CASE("non-equivalent pairs are rejected") {
  MultiGraph square = parse_edge_list("v 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
  MultiGraph tri = parse_edge_list(kTriangle);
  CHECK_FALSE(reconstruct_two_isomorphism(square, tri).has_value());
  // same tree count (4), different groups: 4-cycle vs two doubled edges
  MultiGraph doubled = parse_edge_list("v 3\ne 0 1\ne 0 1\ne 1 2\ne 1 2\n");
  CHECK(spanning_tree_count(square) == spanning_tree_count(doubled));
  CHECK_FALSE(reconstruct_two_isomorphism(square, doubled).has_value());
}
