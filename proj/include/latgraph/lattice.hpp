#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "latgraph/numeric.hpp"

namespace latgraph {

// Positive definite integral lattice given by a basis inside an orthonormal
// ambient space.  Basis vectors are rows; gram[i][j] = <b_i, b_j>.
struct IntegralLattice {
  int ambient_dim = 0;
  QMat basis;
  IMat gram;

  int rank() const { return static_cast<int>(basis.size()); }
};

// Dual-basis coordinates a_i = <chi, b_i> identify covectors; the lattice
// itself sits inside its dual as the image of the Gram matrix.  Smith
// coordinates diagonalize the quotient: s = to_smith * a mod diag.
struct DiscriminantGroup {
  IVec invariant_factors;     // diag entries > 1
  std::vector<int> nontrivial;  // their positions in full_diag
  IVec full_diag;
  IMat to_smith;
  IMat from_smith;

  Int order() const;
  // Reduce full-length smith coordinates, keep nontrivial positions.
  IVec project(const IVec& full) const;
  // Zero-pad nontrivial coordinates back to full length.
  IVec embed(const IVec& coords) const;
};

struct CharClass {
  IVec smith_coords;  // one residue per invariant factor

  auto operator<=>(const CharClass&) const = default;
};

struct DInvariant {
  IVec factors;
  std::map<CharClass, Rat> values;
  CharClass base;  // class of the canonical characteristic covector
};

// Affine bijection of char-class torsors: c |-> matrix * c + translation,
// with d2(phi(c)) = sign * d1(c).
struct TorsorIso {
  IVec factors;
  IMat matrix;  // column j = image of the j-th standard generator
  IVec translation;
  int sign = +1;

  CharClass apply(const CharClass& c) const;
};

IntegralLattice lattice_from_basis(int ambient_dim, const QMat& basis);

// Rows b*_i with <b*_i, b_j> = delta_ij, in ambient coordinates.
QMat dual_basis(const IntegralLattice& l);

DiscriminantGroup discriminant_group(const IntegralLattice& l);

// Linking form b(x,y) in Q/Z, arguments in (nontrivial) smith coordinates.
Rat discriminant_form(const IntegralLattice& l, const DiscriminantGroup& dg,
                      const IVec& x, const IVec& y);

// chi_0 = sum |b_i| b*_i in dual-basis coordinates.
IVec canonical_char(const IntegralLattice& l);

// Class label of a characteristic covector (dual-basis coordinates), as the
// smith-coordinate offset (chi - chi_0)/2 from the canonical covector.
CharClass char_class_of(const IntegralLattice& l, const DiscriminantGroup& dg,
                        const IVec& chi);

// One representative covector per class, ordered by class label.
std::vector<std::pair<CharClass, IVec>> char_classes(
    const IntegralLattice& l, const Int& class_budget = 10000);

// rho of the class, as a representative in [0, 2).
Rat rho(const IntegralLattice& l, const CharClass& c);

struct ShortResult {
  Rat min_norm;
  std::vector<IVec> covectors;  // dual-basis coordinates of all minimizers
};
// Exact minimum of |chi + 2 lambda| over lambda in L.
ShortResult minimize_in_class(const IntegralLattice& l, const IVec& chi,
                              std::uint64_t node_budget = 50'000'000);

DInvariant d_invariant(const IntegralLattice& l,
                       const Int& class_budget = 10000);

// Searches affine torsor bijections with d2 . phi = sign * d1; deterministic
// first-found in lexicographic order (translation, then matrix columns).
std::optional<TorsorIso> find_torsor_iso(const DInvariant& d1,
                                         const DInvariant& d2, int sign);

bool check_iso_respects_b(const TorsorIso& iso, const IntegralLattice& l1,
                          const IntegralLattice& l2);

// Glue lattice of two orthogonal lattices in a common ambient space along the
// group part of the given anti-isomorphism; verified integral and unimodular.
IntegralLattice glue(const IntegralLattice& l1, const IntegralLattice& l2,
                     const TorsorIso& iso);

// For unimodular L: rank-many norm-1 vectors (one per +- pair, lex-positive
// coefficients), as ambient-coordinate rows.  Absent when L is not Z^n.
std::optional<QMat> orthonormal_basis(const IntegralLattice& l);

// Coordinates <chi, b_i> of an ambient covector on L; must be integral.
IVec restrict_covector(const IntegralLattice& l, const QVec& ambient_chi);

// True iff every short covector of l1 (over all classes) is the restriction
// of a +-1 pattern covector of the standard ambient Z^n.
bool short_restriction_surjects(const IntegralLattice& l1, int budget = 20);

std::string format_lattice(const IntegralLattice& l);
IntegralLattice parse_lattice(const std::string& text);
std::string format_d_invariant(const DInvariant& d);
DInvariant parse_d_invariant(const std::string& text);

}  // namespace latgraph
