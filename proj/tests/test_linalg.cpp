#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "latgraph/linalg.hpp"

using namespace latgraph;

namespace {

QMat q(std::initializer_list<std::initializer_list<int>> rows) {
  QMat out;
  for (const auto& r : rows) {
    QVec row;
    for (int x : r) row.push_back(Rat(x));
    out.push_back(row);
  }
  return out;
}

IMat zi(std::initializer_list<std::initializer_list<int>> rows) {
  IMat out;
  for (const auto& r : rows) {
    IVec row;
    for (int x : r) row.push_back(Int(x));
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("determinant, inverse, rank") {
  QMat a = q({{2, 1}, {1, 2}});
  CHECK(determinant(a) == Rat(3));
  CHECK(rank(a) == 2);
  QMat inv = inverse(a);
  CHECK(mat_mul(a, inv) == qmat_identity(2));
  CHECK(rank(q({{1, 2}, {2, 4}})) == 1);
  CHECK(determinant(q({{1, 2}, {2, 4}})) == Rat(0));
  CHECK_THROWS_AS(inverse(q({{1, 2}, {2, 4}})), internal_error);
}

TEST_CASE("solve_linear recovers exact rational solutions") {
  QMat a = q({{3, 1}, {1, 2}});
  QMat b = q({{1}, {0}});
  QMat x = solve_linear(a, b);
  CHECK(mat_mul(a, x) == b);
  CHECK(x[0][0] == Rat(2, 5));
  CHECK(x[1][0] == Rat(-1, 5));
}

TEST_CASE("smith normal form diagonalizes with tracked row transform") {
  IMat a = zi({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  SmithForm s = smith_normal_form(a);
  REQUIRE(s.diag.size() == 3);
  CHECK(s.diag[0] == 2);
  for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
    CHECK(s.diag[i] >= 0);
    if (s.diag[i] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
  }
  // u is unimodular and u_inv really inverts it
  CHECK(mat_mul(s.u, s.u_inv) == imat_identity(3));
  Rat du = determinant(qmat(s.u));
  CHECK((du == 1 || du == -1));
  // product of the invariant factors = |det|
  Int prod = 1;
  for (const Int& d : s.diag) prod *= d;
  Rat det = determinant(qmat(a));
  CHECK(Rat(prod) == (det < 0 ? -det : det));
}

TEST_CASE("smith normal form of a diagonal with entangled factors") {
  SmithForm s = smith_normal_form(zi({{2, 0}, {0, 3}}));
  CHECK(s.diag == IVec{Int(1), Int(6)});
}

TEST_CASE("hnf_row_basis spans the same row lattice") {
  IMat rows = zi({{2, 0}, {0, 2}, {1, 1}});
  IMat basis = hnf_row_basis(rows);
  REQUIRE(basis.size() == 2);
  Rat det = determinant(qmat(basis));
  CHECK((det == 2 || det == -2));
}

TEST_CASE("zspan_basis handles rational generators") {
  QMat rows = {{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1)}};
  QMat basis = zspan_basis(rows);
  REQUIRE(basis.size() == 2);
  Rat det = determinant(basis);
  CHECK((det == Rat(1, 2) || det == Rat(-1, 2)));
}

TEST_CASE("cholesky_ldlt reconstructs the gram matrix") {
  QMat g = q({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  Ldlt f = cholesky_ldlt(g);
  QMat d = qmat_identity(3);
  for (int i = 0; i < 3; ++i) d[i][i] = f.diag[i];
  QMat lt(3, QVec(3, Rat(0)));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lt[i][j] = f.lower[j][i];
  CHECK(mat_mul(mat_mul(f.lower, d), lt) == g);
  CHECK_THROWS_AS(cholesky_ldlt(q({{0, 1}, {1, 0}})), internal_error);
}

TEST_CASE("minimize_quadratic finds all closest points") {
  // distance to the center (1/2, 1/2) in the standard metric
  QMat g = qmat_identity(2);
  QVec c = {Rat(1, 2), Rat(1, 2)};
  QuadMin m = minimize_quadratic(g, c, Rat(10));
  CHECK(m.value == Rat(1, 2));
  CHECK(m.points.size() == 4);
  CHECK(m.points.front() == IVec{Int(0), Int(0)});
  CHECK(m.points.back() == IVec{Int(1), Int(1)});
}

TEST_CASE("minimize_quadratic on a skew gram matrix") {
  QMat g = q({{2, 1}, {1, 2}});
  QVec c = {Rat(0), Rat(1, 2)};
  QuadMin m = minimize_quadratic(g, c, Rat(100));
  CHECK(m.value == Rat(1, 2));
  // (0,0) and (0,1) are tied
  CHECK(m.points == std::vector<IVec>{{Int(0), Int(0)}, {Int(0), Int(1)}});
}

TEST_CASE("enumerate_quadratic_below lists a full ball") {
  QMat g = qmat_identity(2);
  QVec c = {Rat(0), Rat(0)};
  auto pts = enumerate_quadratic_below(g, c, Rat(1));
  CHECK(pts.size() == 5);  // origin and the four unit vectors
  auto pts2 = enumerate_quadratic_below(g, c, Rat(2));
  CHECK(pts2.size() == 9);
}

TEST_CASE("minimize_quadratic respects its node budget") {
  QMat g = qmat_identity(4);
  QVec c(4, Rat(1, 2));
  CHECK_THROWS_AS(minimize_quadratic(g, c, Rat(10000), 3), budget_error);
}
