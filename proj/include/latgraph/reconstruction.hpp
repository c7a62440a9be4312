#pragma once

#include <optional>
#include <vector>

#include "latgraph/graph_lattice.hpp"

namespace latgraph {

// Indicator of membership in the supports of an embedded basis; equal
// patterns form the atoms matched between the two ambient bases.
struct SupportPattern {
  std::vector<bool> bits;

  bool operator==(const SupportPattern&) const = default;
  bool operator<(const SupportPattern& o) const { return bits < o.bits; }
};

// Sign -1 torsor isomorphism d(C(g)) -> d(F(h)) after contracting cut-edges
// in both graphs, or absent.
std::optional<TorsorIso> d_equivalent(const MultiGraph& g,
                                      const MultiGraph& h);

// Flips unit vectors so every pairing with every embedded basis row lies in
// {0, 1}; pairings must already be 0 or +-1, with no mixed-sign unit.
QMat sign_normalize(const QMat& units, const QMat& embedded);

// Pattern-by-pattern bijection (index in a, index in b), lexicographic
// within each atom; throws internal_error on a fiber-size mismatch.
std::vector<std::pair<int, int>> atom_match(
    const std::vector<SupportPattern>& a,
    const std::vector<SupportPattern>& b);

// Full pipeline of the reconstruction theorem; pairs use original edge ids
// and cover the cycle-carrying edges of both graphs.
std::optional<EdgeBijection> reconstruct_two_isomorphism(const MultiGraph& g,
                                                         const MultiGraph& h);

}  // namespace latgraph
