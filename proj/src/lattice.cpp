#include "latgraph/lattice.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "latgraph/linalg.hpp"

namespace latgraph {

Int DiscriminantGroup::order() const {
  Int o = 1;
  for (const Int& d : invariant_factors) o *= d;
  return o;
}

IVec DiscriminantGroup::project(const IVec& full) const {
  IVec out;
  for (int i : nontrivial) out.push_back(int_mod(full[i], full_diag[i]));
  return out;
}

IVec DiscriminantGroup::embed(const IVec& coords) const {
  IVec full(full_diag.size(), 0);
  for (std::size_t i = 0; i < nontrivial.size(); ++i)
    full[nontrivial[i]] = coords[i];
  return full;
}

CharClass TorsorIso::apply(const CharClass& c) const {
  std::size_t k = factors.size();
  IVec out(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    Int v = translation[i];
    for (std::size_t j = 0; j < k; ++j) v += matrix[i][j] * c.smith_coords[j];
    out[i] = int_mod(v, factors[i]);
  }
  return CharClass{out};
}

IntegralLattice lattice_from_basis(int ambient_dim, const QMat& basis) {
  IntegralLattice l;
  l.ambient_dim = ambient_dim;
  l.basis = basis;
  for (const QVec& row : basis)
    if (static_cast<int>(row.size()) != ambient_dim)
      throw std::invalid_argument("lattice_from_basis: row length mismatch");
  std::size_t r = basis.size();
  QMat qg(r, QVec(r));
  l.gram.assign(r, IVec(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rat p = dot(basis[i], basis[j]);
      if (p.get_den() != 1)
        throw std::invalid_argument("lattice_from_basis: non-integral Gram entry");
      qg[i][j] = p;
      l.gram[i][j] = p.get_num();
    }
  if (rank(qg) != r)
    throw std::invalid_argument("lattice_from_basis: dependent basis");
  return l;
}

QMat dual_basis(const IntegralLattice& l) {
  std::size_t r = l.basis.size();
  // Rows of G^{-1} * B.
  QMat ginv = inverse(qmat(l.gram));
  QMat out(r, QVec(l.ambient_dim, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (int k = 0; k < l.ambient_dim; ++k)
        out[i][k] += ginv[i][j] * l.basis[j][k];
  return out;
}

DiscriminantGroup discriminant_group(const IntegralLattice& l) {
  SmithForm snf = smith_normal_form(l.gram);
  DiscriminantGroup dg;
  dg.full_diag = snf.diag;
  dg.to_smith = snf.u;
  dg.from_smith = snf.u_inv;
  for (std::size_t i = 0; i < snf.diag.size(); ++i)
    if (snf.diag[i] > 1) {
      dg.invariant_factors.push_back(snf.diag[i]);
      dg.nontrivial.push_back(static_cast<int>(i));
    }
  return dg;
}

namespace {

// <x, y> in the dual lattice for dual-basis coordinate vectors: x^T G^{-1} y.
Rat dual_pairing(const IntegralLattice& l, const IVec& x, const IVec& y) {
  std::size_t r = l.basis.size();
  if (r == 0) return 0;
  QMat ginv = inverse(qmat(l.gram));
  Rat v = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) v += Rat(x[i]) * ginv[i][j] * Rat(y[j]);
  return v;
}

IVec lift_group_element(const DiscriminantGroup& dg, const IVec& coords) {
  return mat_vec(dg.from_smith, dg.embed(coords));
}

// All group elements in lexicographic order of their coordinate tuples.
std::vector<IVec> all_group_elements(const IVec& factors) {
  std::vector<IVec> out{IVec(factors.size(), 0)};
  for (std::size_t i = factors.size(); i-- > 0;) {
    std::vector<IVec> next;
    for (Int v = 0; v < factors[i]; ++v)
      for (IVec e : out) {
        e[i] = v;
        next.push_back(e);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Rat discriminant_form(const IntegralLattice& l, const DiscriminantGroup& dg,
                      const IVec& x, const IVec& y) {
  return rat_mod(dual_pairing(l, lift_group_element(dg, x),
                              lift_group_element(dg, y)),
                 1);
}

IVec canonical_char(const IntegralLattice& l) {
  IVec chi(l.basis.size());
  for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = l.gram[i][i];
  return chi;
}

CharClass char_class_of(const IntegralLattice& l, const DiscriminantGroup& dg,
                        const IVec& chi) {
  IVec chi0 = canonical_char(l);
  IVec mu(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) {
    Int diff = chi[i] - chi0[i];
    if (diff % 2 != 0)
      throw std::invalid_argument("char_class_of: covector not characteristic");
    mu[i] = diff / 2;
  }
  IVec s = mat_vec(dg.to_smith, mu);
  return CharClass{dg.project(s)};
}

std::vector<std::pair<CharClass, IVec>> char_classes(const IntegralLattice& l,
                                                     const Int& class_budget) {
  DiscriminantGroup dg = discriminant_group(l);
  if (dg.order() > class_budget)
    throw budget_error("char_classes: discriminant exceeds budget");
  IVec chi0 = canonical_char(l);
  std::vector<std::pair<CharClass, IVec>> out;
  for (const IVec& s : all_group_elements(dg.invariant_factors)) {
    IVec lift = lift_group_element(dg, s);
    IVec rep(chi0.size());
    for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = chi0[i] + 2 * lift[i];
    out.push_back({CharClass{s}, rep});
  }
  return out;
}

Rat rho(const IntegralLattice& l, const CharClass& c) {
  DiscriminantGroup dg = discriminant_group(l);
  IVec chi0 = canonical_char(l);
  IVec lift = lift_group_element(dg, c.smith_coords);
  IVec rep(chi0.size());
  for (std::size_t i = 0; i < rep.size(); ++i) rep[i] = chi0[i] + 2 * lift[i];
  Rat norm = dual_pairing(l, rep, rep);
  return rat_mod((norm - l.rank()) / 4, 2);
}

ShortResult minimize_in_class(const IntegralLattice& l, const IVec& chi,
                              std::uint64_t node_budget) {
  std::size_t r = l.basis.size();
  if (r == 0) return {Rat(0), {IVec{}}};
  QMat ginv = inverse(qmat(l.gram));
  // |chi + 2 G t|^2 in the dual equals 4 (t - c)^T G (t - c) with c the
  // continuous minimizer -G^{-1} chi / 2.
  QVec center(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) center[i] += ginv[i][j] * Rat(chi[j]);
    center[i] /= -2;
  }
  Rat bound = dual_pairing(l, chi, chi) / 4;
  QuadMin qm = minimize_quadratic(qmat(l.gram), center, bound, node_budget);
  ShortResult res;
  res.min_norm = qm.value * 4;
  for (const IVec& t : qm.points) {
    IVec cov(r);
    for (std::size_t i = 0; i < r; ++i) {
      cov[i] = chi[i];
      for (std::size_t j = 0; j < r; ++j) cov[i] += 2 * l.gram[i][j] * t[j];
    }
    res.covectors.push_back(cov);
  }
  std::sort(res.covectors.begin(), res.covectors.end());
  return res;
}

DInvariant d_invariant(const IntegralLattice& l, const Int& class_budget) {
  DInvariant d;
  DiscriminantGroup dg = discriminant_group(l);
  d.factors = dg.invariant_factors;
  d.base = CharClass{IVec(d.factors.size(), 0)};
  for (const auto& [cls, rep] : char_classes(l, class_budget)) {
    Rat value = (minimize_in_class(l, rep).min_norm - l.rank()) / 4;
    if (rat_mod(value - rho(l, cls), 2) != 0)
      throw internal_error("d_invariant: value does not reduce to rho");
    d.values[cls] = value;
  }
  return d;
}

std::optional<TorsorIso> find_torsor_iso(const DInvariant& d1,
                                         const DInvariant& d2, int sign) {
  if (d1.factors != d2.factors) return std::nullopt;
  std::size_t k = d1.factors.size();
  if (d1.values.size() != d2.values.size()) return std::nullopt;

  // Value multisets must match up to sign.
  {
    std::vector<Rat> v1, v2;
    for (const auto& [c, v] : d1.values) v1.push_back(v * sign);
    for (const auto& [c, v] : d2.values) v2.push_back(v);
    auto cmp = [](const Rat& a, const Rat& b) { return a < b; };
    std::sort(v1.begin(), v1.end(), cmp);
    std::sort(v2.begin(), v2.end(), cmp);
    if (v1 != v2) return std::nullopt;
  }

  std::vector<IVec> elements = all_group_elements(d1.factors);
  // Column j of the matrix may only be an element killed by factors[j].
  std::vector<std::vector<IVec>> column_candidates(k);
  for (std::size_t j = 0; j < k; ++j)
    for (const IVec& g : elements) {
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i)
        if (int_mod(d1.factors[j] * g[i], d1.factors[i]) != 0) ok = false;
      if (ok) column_candidates[j].push_back(g);
    }

  auto value1 = [&](const IVec& c) { return d1.values.at(CharClass{c}); };
  auto value2 = [&](const IVec& c) { return d2.values.at(CharClass{c}); };

  for (const IVec& t : elements) {
    if (value2(t) != sign * value1(IVec(k, 0))) continue;
    TorsorIso iso;
    iso.factors = d1.factors;
    iso.translation = t;
    iso.sign = sign;
    iso.matrix.assign(k, IVec(k, 0));
    std::function<bool(std::size_t)> place = [&](std::size_t j) -> bool {
      if (j == k) {
        std::set<CharClass> images;
        for (const IVec& c : elements) {
          CharClass img = iso.apply(CharClass{c});
          if (value2(img.smith_coords) != sign * value1(c)) return false;
          images.insert(img);
        }
        return images.size() == elements.size();
      }
      for (const IVec& g : column_candidates[j]) {
        for (std::size_t i = 0; i < k; ++i) iso.matrix[i][j] = g[i];
        // Quick check on the j-th standard generator.
        IVec ej(k, 0);
        ej[j] = int_mod(Int(1), d1.factors[j]);
        IVec img(k);
        for (std::size_t i = 0; i < k; ++i)
          img[i] = int_mod(t[i] + g[i], d1.factors[i]);
        if (value2(img) == sign * value1(ej) && place(j + 1)) return true;
      }
      return false;
    };
    if (place(0)) return iso;
  }
  return std::nullopt;
}

bool check_iso_respects_b(const TorsorIso& iso, const IntegralLattice& l1,
                          const IntegralLattice& l2) {
  DiscriminantGroup dg1 = discriminant_group(l1);
  DiscriminantGroup dg2 = discriminant_group(l2);
  if (dg1.invariant_factors != iso.factors ||
      dg2.invariant_factors != iso.factors)
    return false;
  std::size_t k = iso.factors.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      IVec ei(k, 0), ej(k, 0);
      ei[i] = 1;
      ej[j] = 1;
      IVec fi(k), fj(k);
      for (std::size_t a = 0; a < k; ++a) {
        fi[a] = int_mod(iso.matrix[a][i], iso.factors[a]);
        fj[a] = int_mod(iso.matrix[a][j], iso.factors[a]);
      }
      Rat b1 = discriminant_form(l1, dg1, ei, ej);
      Rat b2 = discriminant_form(l2, dg2, fi, fj);
      if (rat_mod(b2 - iso.sign * b1, 1) != 0) return false;
    }
  return true;
}

IntegralLattice glue(const IntegralLattice& l1, const IntegralLattice& l2,
                     const TorsorIso& iso) {
  if (l1.ambient_dim != l2.ambient_dim)
    throw std::invalid_argument("glue: ambient dimensions differ");
  DiscriminantGroup dg1 = discriminant_group(l1);
  DiscriminantGroup dg2 = discriminant_group(l2);
  if (dg1.invariant_factors != iso.factors ||
      dg2.invariant_factors != iso.factors)
    throw std::invalid_argument("glue: factor mismatch");

  QMat duals1 = dual_basis(l1);
  QMat duals2 = dual_basis(l2);
  auto ambient_lift = [&](const DiscriminantGroup& dg, const QMat& duals,
                          const IVec& coords) {
    IVec a = lift_group_element(dg, coords);
    QVec v(duals.empty() ? 0 : duals[0].size(), 0);
    v.resize(l1.ambient_dim, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += Rat(a[i]) * duals[i][j];
    return v;
  };

  QMat gens = l1.basis;
  gens.insert(gens.end(), l2.basis.begin(), l2.basis.end());
  std::size_t k = iso.factors.size();
  for (std::size_t j = 0; j < k; ++j) {
    IVec ej(k, 0);
    ej[j] = 1;
    IVec img(k);
    for (std::size_t i = 0; i < k; ++i)
      img[i] = int_mod(iso.matrix[i][j], iso.factors[i]);
    QVec x = ambient_lift(dg1, duals1, ej);
    QVec y = ambient_lift(dg2, duals2, img);
    QVec g(l1.ambient_dim);
    for (int i = 0; i < l1.ambient_dim; ++i) g[i] = x[i] + y[i];
    gens.push_back(g);
  }

  QMat rows = zspan_basis(gens);
  IntegralLattice glued;
  try {
    glued = lattice_from_basis(l1.ambient_dim, rows);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("glue: iso does not yield an integral lattice");
  }
  if (glued.rank() != l1.rank() + l2.rank())
    throw std::invalid_argument("glue: unexpected rank");
  if (determinant(qmat(glued.gram)) != 1)
    throw std::invalid_argument("glue: result not unimodular");
  return glued;
}

std::optional<QMat> orthonormal_basis(const IntegralLattice& l) {
  if (determinant(qmat(l.gram)) != 1)
    throw std::invalid_argument("orthonormal_basis: lattice not unimodular");
  std::size_t r = l.basis.size();
  if (r == 0) return QMat{};
  QVec center(r, 0);
  std::vector<IVec> pts =
      enumerate_quadratic_below(qmat(l.gram), center, 1);
  std::set<IVec> reps;
  for (const IVec& t : pts) {
    bool zero = true, positive = false;
    for (const Int& x : t) {
      if (x != 0) {
        zero = false;
        positive = x > 0;
        break;
      }
    }
    if (zero) continue;
    if (positive)
      reps.insert(t);
    else {
      IVec neg(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
      reps.insert(neg);
    }
  }
  if (reps.size() != r) return std::nullopt;
  QMat coeff;
  for (const IVec& t : reps) {
    QVec row(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) row[i] = Rat(t[i]);
    coeff.push_back(row);
  }
  Rat det = determinant(coeff);
  if (det != 1 && det != -1)
    throw internal_error("orthonormal_basis: unit vectors do not span");
  QMat out;
  for (const IVec& t : reps) {
    QVec v(l.ambient_dim, 0);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int j = 0; j < l.ambient_dim; ++j)
        v[j] += Rat(t[i]) * l.basis[i][j];
    out.push_back(v);
  }
  return out;
}

IVec restrict_covector(const IntegralLattice& l, const QVec& ambient_chi) {
  if (static_cast<int>(ambient_chi.size()) != l.ambient_dim)
    throw std::invalid_argument("restrict_covector: dimension mismatch");
  IVec out(l.basis.size());
  for (std::size_t i = 0; i < l.basis.size(); ++i) {
    Rat v = dot(ambient_chi, l.basis[i]);
    if (v.get_den() != 1)
      throw std::invalid_argument("restrict_covector: non-integral value");
    out[i] = v.get_num();
  }
  return out;
}

bool short_restriction_surjects(const IntegralLattice& l1, int budget) {
  int n = l1.ambient_dim;
  if (n > budget)
    throw budget_error("short_restriction_surjects: ambient dim over budget");
  std::set<IVec> restrictions;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    QVec chi(n);
    for (int i = 0; i < n; ++i)
      chi[i] = (mask >> i) & 1 ? Rat(1) : Rat(-1);
    IVec coords(l1.basis.size());
    bool integral = true;
    for (std::size_t i = 0; i < l1.basis.size(); ++i) {
      Rat v = dot(chi, l1.basis[i]);
      if (v.get_den() != 1) {
        integral = false;
        break;
      }
      coords[i] = v.get_num();
    }
    if (integral) restrictions.insert(coords);
  }
  for (const auto& [cls, rep] : char_classes(l1)) {
    for (const IVec& cov : minimize_in_class(l1, rep).covectors)
      if (!restrictions.count(cov)) return false;
  }
  return true;
}

std::string format_lattice(const IntegralLattice& l) {
  std::ostringstream out;
  out << "lattice\n" << l.ambient_dim << "\n";
  for (const QVec& row : l.basis) {
    for (std::size_t j = 0; j < row.size(); ++j)
      out << (j ? " " : "") << rat_str(row[j]);
    out << "\n";
  }
  return out.str();
}

IntegralLattice parse_lattice(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) lines.push_back(line);
  }
  if (lines.size() < 2) throw parse_error("lattice: truncated input");
  {
    std::istringstream ls(lines[0]);
    std::string tag;
    ls >> tag;
    if (tag != "lattice") throw parse_error("lattice: missing header");
  }
  int ambient;
  {
    std::istringstream ls(lines[1]);
    if (!(ls >> ambient) || ambient < 0)
      throw parse_error("lattice: bad ambient dimension");
  }
  QMat basis;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    QVec row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_rat(tok));
    if (static_cast<int>(row.size()) != ambient)
      throw parse_error("lattice: row length mismatch");
    basis.push_back(row);
  }
  return lattice_from_basis(ambient, basis);
}

std::string format_d_invariant(const DInvariant& d) {
  std::ostringstream out;
  out << "# classes are smith-coordinate offsets from the canonical "
         "characteristic covector\n";
  out << "factors";
  for (const Int& f : d.factors) out << " " << f;
  out << "\n";
  for (const auto& [cls, v] : d.values) {
    out << "class";
    for (const Int& c : cls.smith_coords) out << " " << c;
    out << " d " << rat_str(v) << "\n";
  }
  return out.str();
}

DInvariant parse_d_invariant(const std::string& text) {
  DInvariant d;
  bool have_factors = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "factors") {
      if (have_factors) throw parse_error("d-invariant: duplicate factors");
      std::string tok;
      while (ls >> tok) {
        try {
          d.factors.push_back(Int(tok));
        } catch (const std::invalid_argument&) {
          throw parse_error("d-invariant: bad factor '" + tok + "'");
        }
      }
      have_factors = true;
    } else if (tag == "class") {
      if (!have_factors) throw parse_error("d-invariant: class before factors");
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      if (toks.size() != d.factors.size() + 2 ||
          toks[d.factors.size()] != "d")
        throw parse_error("d-invariant: malformed class line");
      CharClass c;
      for (std::size_t i = 0; i < d.factors.size(); ++i) {
        try {
          c.smith_coords.push_back(Int(toks[i]));
        } catch (const std::invalid_argument&) {
          throw parse_error("d-invariant: bad coordinate '" + toks[i] + "'");
        }
      }
      d.values[c] = parse_rat(toks.back());
    } else {
      throw parse_error("d-invariant: unknown directive '" + tag + "'");
    }
  }
  if (!have_factors) throw parse_error("d-invariant: missing factors line");
  d.base = CharClass{IVec(d.factors.size(), 0)};
  return d;
}

}  // namespace latgraph
