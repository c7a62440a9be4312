#include "latgraph/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace latgraph {

QMat qmat(const IMat& a) {
  QMat q(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    q[i].assign(a[i].begin(), a[i].end());
  return q;
}

IMat imat_identity(std::size_t n) {
  IMat e(n, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

QMat qmat_identity(std::size_t n) {
  QMat e(n, QVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

template <typename M>
static M mul(const M& a, const M& b) {
  std::size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  M c(m, typename M::value_type(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

QMat mat_mul(const QMat& a, const QMat& b) { return mul(a, b); }
IMat mat_mul(const IMat& a, const IMat& b) { return mul(a, b); }

QVec mat_vec(const QMat& a, const QVec& x) {
  QVec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

IVec mat_vec(const IMat& a, const IVec& x) {
  IVec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

Rat dot(const QVec& a, const QVec& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QMat solve_linear(const QMat& a, const QMat& b) {
  std::size_t n = a.size();
  QMat aug = a;
  for (std::size_t i = 0; i < n; ++i)
    aug[i].insert(aug[i].end(), b[i].begin(), b[i].end());
  std::size_t cols = n + (n ? b[0].size() : 0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) throw internal_error("solve_linear: singular matrix");
    std::swap(aug[piv], aug[col]);
    Rat inv = 1 / aug[col][col];
    for (std::size_t j = col; j < cols; ++j) aug[col][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug[i][col] == 0) continue;
      Rat f = aug[i][col];
      for (std::size_t j = col; j < cols; ++j) aug[i][j] -= f * aug[col][j];
    }
  }
  QMat x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i].assign(aug[i].begin() + n, aug[i].end());
  return x;
}

QMat inverse(const QMat& a) { return solve_linear(a, qmat_identity(a.size())); }

Rat determinant(QMat a) {
  std::size_t n = a.size();
  Rat det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

std::size_t rank(QMat a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      Rat f = a[i][col] / a[r][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

struct SnfState {
  IMat a;
  IMat u;
  IMat u_inv;

  void row_swap(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
    for (auto& row : u_inv) std::swap(row[i], row[j]);
  }
  // row i += c * row j
  void row_add(std::size_t i, std::size_t j, const Int& c) {
    for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] += c * a[j][k];
    for (std::size_t k = 0; k < u[i].size(); ++k) u[i][k] += c * u[j][k];
    for (auto& row : u_inv) row[j] -= c * row[i];
  }
  void row_negate(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (auto& row : u_inv) row[i] = -row[i];
  }
  void col_swap(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
  }
  void col_add(std::size_t i, std::size_t j, const Int& c) {
    for (auto& row : a) row[i] += c * row[j];
  }
  void col_negate(std::size_t i) {
    for (auto& row : a) row[i] = -row[i];
  }
};

}  // namespace

SmithForm smith_normal_form(IMat mat) {
  std::size_t m = mat.size(), n = m ? mat[0].size() : 0;
  SnfState s{std::move(mat), imat_identity(m), imat_identity(m)};
  std::size_t t = std::min(m, n);
  for (std::size_t k = 0; k < t; ++k) {
    for (;;) {
      // Locate the nonzero entry of least absolute value in the trailing block.
      std::size_t pi = m, pj = n;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          if (s.a[i][j] == 0) continue;
          if (pi == m || mpz_cmpabs(s.a[i][j].get_mpz_t(),
                                s.a[pi][pj].get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) {
        t = k;  // rest of the matrix is zero
        break;
      }
      if (pi != k) s.row_swap(pi, k);
      if (pj != k) s.col_swap(pj, k);
      if (s.a[k][k] < 0) s.row_negate(k);

      bool clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (s.a[i][k] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.a[i][k].get_mpz_t(),
                   s.a[k][k].get_mpz_t());
        s.row_add(i, k, -q);
        if (s.a[i][k] != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (s.a[k][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), s.a[k][j].get_mpz_t(),
                   s.a[k][k].get_mpz_t());
        s.col_add(j, k, -q);
        if (s.a[k][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = k + 1; i < m && divides; ++i)
        for (std::size_t j = k + 1; j < n && divides; ++j)
          if (s.a[i][j] % s.a[k][k] != 0) {
            s.row_add(k, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (t == k) break;
  }
  IVec diag(std::min(m, n), 0);
  for (std::size_t k = 0; k < diag.size(); ++k) diag[k] = s.a[k][k];
  return SmithForm{std::move(diag), std::move(s.u), std::move(s.u_inv)};
}

IMat hnf_row_basis(IMat rows) {
  std::size_t m = rows.size(), n = m ? rows[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    // Euclidean elimination in this column below row r.
    for (;;) {
      std::size_t piv = m;
      for (std::size_t i = r; i < m; ++i) {
        if (rows[i][col] == 0) continue;
        if (piv == m ||
            mpz_cmpabs(rows[i][col].get_mpz_t(), rows[piv][col].get_mpz_t()) < 0)
          piv = i;
      }
      if (piv == m) break;
      std::swap(rows[piv], rows[r]);
      if (rows[r][col] < 0)
        for (auto& x : rows[r]) x = -x;
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][col] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                   rows[r][col].get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][col] == 0) continue;
    // Reduce entries above the pivot for a canonical result.
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                 rows[r][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

QMat zspan_basis(const QMat& rows) {
  Int denom(1);
  for (const auto& row : rows)
    for (const auto& x : row) denom = lcm(denom, x.get_den());
  IMat scaled(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    scaled[i].resize(rows[i].size());
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      Rat v = rows[i][j] * Rat(denom);
      scaled[i][j] = v.get_num();
    }
  }
  IMat basis = hnf_row_basis(std::move(scaled));
  QMat out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out[i].resize(basis[i].size());
    for (std::size_t j = 0; j < basis[i].size(); ++j)
      out[i][j] = Rat(basis[i][j]) / Rat(denom);
  }
  return out;
}

Ldlt cholesky_ldlt(const QMat& gram) {
  std::size_t n = gram.size();
  Ldlt f{QVec(n, Rat(0)), qmat_identity(n)};
  QMat a = gram;
  for (std::size_t j = 0; j < n; ++j) {
    Rat d = a[j][j];
    for (std::size_t k = 0; k < j; ++k)
      d -= f.lower[j][k] * f.lower[j][k] * f.diag[k];
    if (d <= 0) throw internal_error("cholesky_ldlt: form not positive definite");
    f.diag[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat v = a[i][j];
      for (std::size_t k = 0; k < j; ++k)
        v -= f.lower[i][k] * f.lower[j][k] * f.diag[k];
      f.lower[i][j] = v / d;
    }
  }
  return f;
}

namespace {

// Shared depth-first enumeration.  Levels run from n-1 down to 0; at level i
// the contribution is diag[i] * y_i^2 with y_i = (t_i - c_i) + sum_{j>i}
// lower[j][i] (t_j - c_j).
struct QuadEnum {
  const Ldlt& f;
  const QVec& center;
  std::size_t n;
  Rat bound;
  bool shrink;  // minimize mode: shrink bound to best value found
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  IVec t;
  std::vector<IVec> hits;
  Rat best;

  QuadEnum(const Ldlt& f, const QVec& center, const Rat& bound, bool shrink,
           std::uint64_t budget)
      : f(f), center(center), n(center.size()), bound(bound), shrink(shrink),
        budget(budget), t(n, 0), best(bound) {}

  void run() {
    if (n == 0) {
      hits.push_back({});
      best = 0;
      return;
    }
    descend(n, Rat(0));
  }

  // `level` counts how many coordinates remain unset (t[level-1] is chosen
  // next); `acc` is the accumulated quadratic value of the chosen tail.
  void descend(std::size_t level, const Rat& acc) {
    if (++nodes > budget) throw budget_error("lattice enumeration budget exceeded");
    if (level == 0) {
      if (shrink && acc < best) {
        best = acc;
        hits.clear();
      }
      if (!shrink || acc == best) hits.push_back(t);
      return;
    }
    std::size_t i = level - 1;
    Rat off = -center[i];
    for (std::size_t j = level; j < n; ++j)
      off += f.lower[j][i] * (Rat(t[j]) - center[j]);
    // y_i = t_i + off; scan t_i outward from the continuous minimizer.
    Rat c = -off;
    Int start(c.get_num() / c.get_den());
    if (c < 0 && Rat(start) != c) start -= 1;  // floor
    for (int dir = 0; dir < 2; ++dir) {
      Int ti = dir == 0 ? start : start + 1;
      Int step = dir == 0 ? -1 : 1;
      for (;;) {
        Rat y = Rat(ti) + off;
        Rat val = acc + f.diag[i] * y * y;
        if (val > bound) break;
        t[i] = ti;
        descend(i, val);
        ti += step;
      }
    }
  }
};

}  // namespace

QuadMin minimize_quadratic(const QMat& gram, const QVec& center,
                           const Rat& init_bound, std::uint64_t node_budget) {
  Ldlt f = cholesky_ldlt(gram);
  QuadEnum e(f, center, init_bound, true, node_budget);
  e.run();
  std::sort(e.hits.begin(), e.hits.end());
  return QuadMin{e.best, std::move(e.hits)};
}

std::vector<IVec> enumerate_quadratic_below(const QMat& gram,
                                            const QVec& center,
                                            const Rat& bound,
                                            std::uint64_t node_budget) {
  Ldlt f = cholesky_ldlt(gram);
  QuadEnum e(f, center, bound, false, node_budget);
  e.run();
  std::sort(e.hits.begin(), e.hits.end());
  return e.hits;
}

}  // namespace latgraph
