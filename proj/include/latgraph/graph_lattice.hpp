#pragma once

#include <optional>

#include "latgraph/lattice.hpp"
#include "latgraph/multigraph.hpp"

namespace latgraph {

// Cut and flow lattices inside C1(g; Z) = Z^{|E|}, with the special bases
// coming from the layered forest: fundamental cuts for forest edges,
// fundamental cycles for the rest.
IntegralLattice cut_lattice(const MultiGraph& g);
IntegralLattice flow_lattice(const MultiGraph& g);

// Reduced Laplacian with the root row and column deleted; rows and columns
// are indexed by the remaining vertices in ascending order.
IMat goeritz_gram(const MultiGraph& g, int root);

Int spanning_tree_count(const MultiGraph& g);

// +-1 vector chi_O with <chi_O, e_i> = +1 exactly when o agrees with O0.
QVec orientation_covector(const MultiGraph& g, const Orientation& o);

DInvariant cut_d_invariant_via_orientations(const MultiGraph& g,
                                            int edge_budget = 24);

enum class FlowMethod { orientations, cvp };
DInvariant flow_d_invariant(const MultiGraph& g,
                            FlowMethod method = FlowMethod::orientations,
                            int edge_budget = 24);

// Sign -1 torsor isomorphism d(C(g)) -> d(F(g)) induced by restricting a
// common ambient characteristic covector to both sublattices.
TorsorIso natural_cut_flow_iso(const MultiGraph& g, int edge_budget = 24);

// Orientation with prescribed in-degrees, or absent when none exists.
std::optional<Orientation> orientation_with_indegrees(
    const MultiGraph& g, const std::vector<int>& indegree);

}  // namespace latgraph
