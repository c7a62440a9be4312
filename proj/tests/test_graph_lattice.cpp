#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "latgraph/graph_lattice.hpp"
#include "latgraph/linalg.hpp"

using namespace latgraph;

namespace {

const char* kTriangle = "v 3\ne 0 1\ne 0 2\ne 1 2\n";
const char* kTheta = "v 2\ne 0 1\ne 0 1\ne 0 1\n";
const char* kTwoParallel = "v 2\ne 0 1\ne 0 1\n";

std::vector<Rat> value_multiset(const DInvariant& d) {
  std::vector<Rat> v;
  for (const auto& [c, x] : d.values) v.push_back(x);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("cut and flow lattices of the triangle") {
  MultiGraph g = parse_edge_list(kTriangle);
  IntegralLattice cut = cut_lattice(g);
  IntegralLattice flow = flow_lattice(g);
  CHECK(cut.ambient_dim == 3);
  CHECK(cut.rank() == 2);
  CHECK(flow.rank() == 1);
  CHECK(flow.gram == IMat{{Int(3)}});
  // complementary orthogonal sublattices of C1(G; Z)
  for (const QVec& c : cut.basis)
    for (const QVec& f : flow.basis) CHECK(dot(c, f) == Rat(0));
  CHECK(determinant(qmat(cut.gram)) == Rat(3));
}

TEST_CASE("cut and flow lattices on a corpus are orthogonal complements") {
  for (const MultiGraph& g : enumerate_multigraphs(5, true)) {
    IntegralLattice cut = cut_lattice(g);
    IntegralLattice flow = flow_lattice(g);
    CHECK(cut.rank() + flow.rank() == g.edge_count());
    for (const QVec& c : cut.basis)
      for (const QVec& f : flow.basis) CHECK(dot(c, f) == Rat(0));
    // equal discriminants, both equal to the tree count
    Int trees = spanning_tree_count(g);
    if (cut.rank() > 0) CHECK(determinant(qmat(cut.gram)) == Rat(trees));
    if (flow.rank() > 0) CHECK(determinant(qmat(flow.gram)) == Rat(trees));
  }
}

TEST_CASE("special bases take 0/1 values against the twisted orientations") {
  for (const MultiGraph& g : enumerate_multigraphs(6, true)) {
    ForestData fd = layered_forest(g);
    IntegralLattice cut = cut_lattice(g);
    IntegralLattice flow = flow_lattice(g);
    for (const QVec& row : cut.basis)
      for (int e = 0; e < g.edge_count(); ++e) {
        Rat v = row[e] * fd.o1.direction[e];
        CHECK((v == 0 || v == 1));
      }
    for (const QVec& row : flow.basis)
      for (int e = 0; e < g.edge_count(); ++e) {
        Rat v = row[e] * fd.o2.direction[e];
        CHECK((v == 0 || v == 1));
      }
  }
}

TEST_CASE("goeritz_gram is the reduced Laplacian") {
  MultiGraph tri = parse_edge_list(kTriangle);
  CHECK(goeritz_gram(tri, 0) == IMat{{Int(2), Int(-1)}, {Int(-1), Int(2)}});
  CHECK(goeritz_gram(parse_edge_list(kTheta), 0) == IMat{{Int(3)}});
  // congruent to the cut gram: same determinant
  CHECK(determinant(qmat(goeritz_gram(tri, 1))) == Rat(3));
}

TEST_CASE("spanning_tree_count matches the Goeritz determinant") {
  CHECK(spanning_tree_count(parse_edge_list(kTriangle)) == 3);
  CHECK(spanning_tree_count(parse_edge_list(kTheta)) == 3);
  CHECK(spanning_tree_count(parse_edge_list("v 1\n")) == 1);
  CHECK(spanning_tree_count(parse_edge_list("v 3\ne 0 1\ne 1 2\n")) == 1);
  for (const MultiGraph& g : enumerate_multigraphs(6, false)) {
    if (!is_connected(g) || g.vertex_count < 2) continue;
    CHECK(Rat(spanning_tree_count(g)) == determinant(qmat(goeritz_gram(g, 0))));
  }
}

TEST_CASE("orientation covectors restrict to characteristic covectors") {
  MultiGraph g = parse_edge_list(kTriangle);
  IntegralLattice cut = cut_lattice(g);
  DiscriminantGroup dg = discriminant_group(cut);
  Orientation o{{1, -1, 1}};
  QVec chi = orientation_covector(g, o);
  CHECK(chi == QVec{Rat(1), Rat(-1), Rat(1)});
  IVec a = restrict_covector(cut, chi);
  CHECK_NOTHROW(char_class_of(cut, dg, a));
}

TEST_CASE("cut d-invariant of the triangle") {
  DInvariant d = cut_d_invariant_via_orientations(parse_edge_list(kTriangle));
  CHECK(d.factors == IVec{Int(3)});
  CHECK(value_multiset(d) ==
        std::vector<Rat>{Rat(-1, 2), Rat(1, 6), Rat(1, 6)});
  CHECK(d.values.at(d.base) == Rat(1, 6));
}

TEST_CASE("flow d-invariants of small graphs") {
  DInvariant d2 = flow_d_invariant(parse_edge_list(kTwoParallel));
  CHECK(d2.factors == IVec{Int(2)});
  CHECK(value_multiset(d2) == std::vector<Rat>{Rat(-1, 4), Rat(1, 4)});

  DInvariant d3 = flow_d_invariant(parse_edge_list(kTriangle));
  CHECK(value_multiset(d3) ==
        std::vector<Rat>{Rat(-1, 6), Rat(-1, 6), Rat(1, 2)});
  CHECK(d3.values.at(d3.base) == Rat(1, 2));

  // a tree has trivial flow lattice
  DInvariant dt = flow_d_invariant(parse_edge_list("v 2\ne 0 1\n"));
  CHECK(dt.values.size() == 1);
  CHECK(dt.values.begin()->second == Rat(0));
}

TEST_CASE("both flow methods agree exactly") {
  for (const MultiGraph& g : enumerate_multigraphs(6, true)) {
    DInvariant a = flow_d_invariant(g, FlowMethod::orientations);
    DInvariant b = flow_d_invariant(g, FlowMethod::cvp);
    CHECK(a.factors == b.factors);
    CHECK(a.base == b.base);
    CHECK(a.values == b.values);
  }
}

TEST_CASE("cut and flow d-invariants are value-wise negatives") {
  for (const MultiGraph& g : enumerate_multigraphs(5, true)) {
    DInvariant dc = cut_d_invariant_via_orientations(g);
    DInvariant df = flow_d_invariant(g);
    std::vector<Rat> neg;
    for (const auto& [c, v] : dc.values) neg.push_back(-v);
    std::sort(neg.begin(), neg.end());
    CHECK(value_multiset(df) == neg);
  }
}

TEST_CASE("natural_cut_flow_iso has sign -1 and respects the linking form") {
  for (const char* text : {kTriangle, kTheta, kTwoParallel}) {
    MultiGraph g = parse_edge_list(text);
    TorsorIso iso = natural_cut_flow_iso(g);
    CHECK(iso.sign == -1);
    DInvariant dc = cut_d_invariant_via_orientations(g);
    DInvariant df = flow_d_invariant(g);
    for (const auto& [c, v] : dc.values)
      CHECK(df.values.at(iso.apply(c)) == -v);
    CHECK(check_iso_respects_b(iso, cut_lattice(g), flow_lattice(g)));
  }
}

TEST_CASE("gluing cut and flow along the natural iso recovers Z^n") {
  for (const char* text : {kTriangle, kTheta, kTwoParallel}) {
    MultiGraph g = parse_edge_list(text);
    IntegralLattice glued =
        glue(cut_lattice(g), flow_lattice(g), natural_cut_flow_iso(g));
    CHECK(glued.gram == imat_identity(g.edge_count()));
    auto units = orthonormal_basis(glued);
    REQUIRE(units.has_value());
    // the edge basis is recovered up to sign and order
    for (const QVec& row : *units) {
      int support = 0;
      for (const Rat& x : row) {
        if (x != 0) ++support;
      }
      CHECK(support == 1);
    }
  }
}

TEST_CASE("short covectors of the cut lattice come from orientations") {
  for (const MultiGraph& g : enumerate_multigraphs(5, true)) {
    CHECK(short_restriction_surjects(cut_lattice(g)));
  }
}

TEST_CASE("orientation_with_indegrees realizes feasible degree vectors") {
  MultiGraph g = parse_edge_list(kTriangle);
  auto o = orientation_with_indegrees(g, {1, 1, 1});
  REQUIRE(o.has_value());
  std::vector<int> indeg(3, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    indeg[o->direction[e] == 1 ? v : u]++;
  }
  CHECK(indeg == std::vector<int>{1, 1, 1});
  CHECK_FALSE(orientation_with_indegrees(g, {3, 0, 0}).has_value());
  CHECK_FALSE(orientation_with_indegrees(g, {0, 0, 3}).has_value());
}
