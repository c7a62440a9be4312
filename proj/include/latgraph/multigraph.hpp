#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace latgraph {

// Loopless undirected multigraph.  Edge ids are positions in `edges`; the
// stored endpoint order (first -> second) is the reference orientation O0.
struct MultiGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Direction of every edge relative to the reference orientation.
struct Orientation {
  std::vector<int> direction;  // +1 agrees with O0, -1 reversed
};

// Maximal spanning forest together with the root-set layering that produced
// it.  Forest edges join consecutive layers; non-forest edges join distinct
// layers.
struct LayeredForest {
  std::vector<bool> in_forest;  // per edge
  std::vector<int> layer;       // per vertex
};

struct ForestData {
  LayeredForest forest;
  Orientation o1;  // every edge lower layer -> higher layer
  Orientation o2;  // o1 with non-forest edges reversed
};

// Candidate 2-isomorphism: pairs (edge of G, edge of G').
struct EdgeBijection {
  std::vector<std::pair<int, int>> pairs;
};

// Edge subsets as bitmasks; graphs handled here stay well under 64 edges.
using EdgeSet = std::uint64_t;

struct SignedEdge {
  int edge;
  int sign;  // relative to O0
};

MultiGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const MultiGraph& g);

bool is_connected(const MultiGraph& g);
std::vector<bool> cut_edges(const MultiGraph& g);
bool is_two_edge_connected(const MultiGraph& g);

// Result of contracting all cut-edges: surviving edges keep their relative
// order; `edge_ids[i]` is the original id of edge i, `vertex_map[v]` the image
// of original vertex v.
struct Contraction {
  MultiGraph graph;
  std::vector<int> edge_ids;
  std::vector<int> vertex_map;
};
Contraction contract_cut_edges(const MultiGraph& g);

ForestData layered_forest(const MultiGraph& g);

std::vector<SignedEdge> fundamental_cut(const MultiGraph& g,
                                        const ForestData& fd, int e);
std::vector<SignedEdge> fundamental_cycle(const MultiGraph& g,
                                          const ForestData& fd, int e);

MultiGraph whitney_switch(const MultiGraph& g,
                          const std::vector<bool>& side_edges, int v, int w);

std::vector<EdgeSet> cycle_space_basis(const MultiGraph& g);
// Every element of the binary cycle space (2^dim masks).
std::vector<EdgeSet> cycle_space(const MultiGraph& g);

bool verify_two_isomorphism(const MultiGraph& g, const MultiGraph& h,
                            const EdgeBijection& f);

// Searches all bijections between the cycle edges of g and h (after cut-edge
// contraction); the reported pairs use original edge ids.  Deterministic:
// returns the lexicographically least bijection found.
std::optional<EdgeBijection> brute_force_two_isomorphism(
    const MultiGraph& g, const MultiGraph& h, int edge_budget = 10);

// All connected loopless multigraphs with at most max_edges edges, one per
// isomorphism class, in a deterministic order.
std::vector<MultiGraph> enumerate_multigraphs(int max_edges,
                                              bool two_edge_connected_only,
                                              int budget = 8);

// Connected components of g with the given vertices removed; returns a
// component index per vertex (-1 for removed ones).
std::vector<int> components_excluding(const MultiGraph& g,
                                      const std::vector<int>& removed);

}  // namespace latgraph
