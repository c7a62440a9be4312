#pragma once

#include <cstdint>
#include <optional>

#include "latgraph/numeric.hpp"

namespace latgraph {

QMat qmat(const IMat& a);
IMat imat_identity(std::size_t n);
QMat qmat_identity(std::size_t n);

QMat mat_mul(const QMat& a, const QMat& b);
IMat mat_mul(const IMat& a, const IMat& b);
QVec mat_vec(const QMat& a, const QVec& x);
IVec mat_vec(const IMat& a, const IVec& x);
Rat dot(const QVec& a, const QVec& b);

// Solves A X = B for square nonsingular A; throws internal_error if singular.
QMat solve_linear(const QMat& a, const QMat& b);
QMat inverse(const QMat& a);
Rat determinant(QMat a);
std::size_t rank(QMat a);

// U * A * V = diag(d) with U, V unimodular; only U and its inverse are
// reported.  d entries are nonnegative and satisfy d[0] | d[1] | ...
struct SmithForm {
  IVec diag;
  IMat u;
  IMat u_inv;
};
SmithForm smith_normal_form(IMat a);

// Basis (as matrix rows) of the Z-span of the given integer rows.
IMat hnf_row_basis(IMat rows);
// Same for rational rows: the span is a finitely generated subgroup of Q^n.
QMat zspan_basis(const QMat& rows);

// G = L D L^T with L unit lower triangular; throws internal_error unless G is
// symmetric positive definite.
struct Ldlt {
  QVec diag;
  QMat lower;
};
Ldlt cholesky_ldlt(const QMat& gram);

// Exact branch-and-bound enumeration of integer points t minimizing
// (t - center)^T gram (t - center), seeded with the given upper bound (which
// is attained by at least one point unless the result comes back empty).
// Collects every minimizer; points are returned sorted lexicographically.
struct QuadMin {
  Rat value;
  std::vector<IVec> points;
};
QuadMin minimize_quadratic(const QMat& gram, const QVec& center,
                           const Rat& init_bound,
                           std::uint64_t node_budget = 50'000'000);

// All integer points with (t - center)^T gram (t - center) <= bound.
std::vector<IVec> enumerate_quadratic_below(
    const QMat& gram, const QVec& center, const Rat& bound,
    std::uint64_t node_budget = 50'000'000);

}  // namespace latgraph
