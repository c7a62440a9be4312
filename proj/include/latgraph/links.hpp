#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "latgraph/reconstruction.hpp"

namespace latgraph {

// Planar diagram code: one 4-tuple of arc labels per crossing, listed
// counterclockwise starting at the incoming under-strand.  The 0-crossing
// unknot diagram is the empty tuple list (token "unknot").
struct PDCode {
  std::vector<std::array<int, 4>> tuples;

  int crossings() const { return static_cast<int>(tuples.size()); }
};

PDCode parse_pd(const std::string& text);
std::string format_pd(const PDCode& pd);

// Checkerboard graph on the black regions (one vertex per black face, one
// edge per crossing); edge ids equal crossing indices.
MultiGraph tait_graph(const PDCode& pd);

// True iff the diagram has no nugatory crossing: the checkerboard graph is
// loopless and 2-edge-connected.
bool is_reduced(const PDCode& pd);

struct MutantVerdict {
  bool equivalent = false;
  // Crossing correspondence over the cycle-carrying crossings.
  std::optional<EdgeBijection> crossing_map;
};
// Decides Conway-mutation equivalence of reduced connected alternating
// diagrams.  With reduce = true, nugatory crossings are removed first.
MutantVerdict mutation_equivalent(const PDCode& pd1, const PDCode& pd2,
                                  bool reduce = false);

// Standard-position two-bridge data: Hamiltonian cycle split into paths
// F_0..F_k with bundles E_1..E_k of parallel edges from v_0 to the marked
// vertices.
struct TwoBridgeSpec {
  int k = 0;
  std::vector<int> bundle_sizes;  // |E_1|..|E_k|
  std::vector<int> path_lengths;  // |F_0|..|F_k|

  int crossing_number() const;
  bool operator==(const TwoBridgeSpec&) const = default;
};

TwoBridgeSpec parse_two_bridge(const std::string& text);
std::string format_two_bridge(const TwoBridgeSpec& spec);
TwoBridgeSpec reversed_spec(const TwoBridgeSpec& spec);

MultiGraph two_bridge_graph(const TwoBridgeSpec& spec);

// Classifies all specs with crossing number <= max_crossings by flow
// d-invariant; verifies every class is {spec, reversed spec}.
std::vector<std::vector<TwoBridgeSpec>> two_bridge_mutation_classes(
    int max_crossings);

// d-invariants of the double branched cover: -d of the flow lattice of the
// checkerboard graph, relabeled.
DInvariant branched_cover_d_invariants(const PDCode& pd);

// Alternating diagram whose checkerboard graph is the given plane graph;
// rotation[v] lists the edges at v in counterclockwise order.
PDCode pd_from_plane_graph(const MultiGraph& g,
                           const std::vector<std::vector<int>>& rotation);

// PD code of the standard-position two-bridge diagram.
PDCode two_bridge_pd(const TwoBridgeSpec& spec);

}  // namespace latgraph
