#include "latgraph/reconstruction.hpp"

#include <algorithm>
#include <map>

#include "latgraph/linalg.hpp"

namespace latgraph {

std::optional<TorsorIso> d_equivalent(const MultiGraph& g,
                                      const MultiGraph& h) {
  MultiGraph gc = contract_cut_edges(g).graph;
  MultiGraph hc = contract_cut_edges(h).graph;
  DInvariant dc = cut_d_invariant_via_orientations(gc);
  DInvariant df = flow_d_invariant(hc, FlowMethod::orientations);
  return find_torsor_iso(dc, df, -1);
}

QMat sign_normalize(const QMat& units, const QMat& embedded) {
  QMat out = units;
  for (QVec& u : out) {
    bool pos = false, neg = false;
    for (const QVec& x : embedded) {
      Rat p = dot(u, x);
      if (p == 0) continue;
      if (p == 1)
        pos = true;
      else if (p == -1)
        neg = true;
      else
        throw internal_error("sign_normalize: pairing outside {-1,0,1}");
    }
    if (pos && neg)
      throw internal_error("sign_normalize: mixed-sign unit column");
    if (neg)
      for (Rat& c : u) c = -c;
  }
  return out;
}

std::vector<std::pair<int, int>> atom_match(
    const std::vector<SupportPattern>& a,
    const std::vector<SupportPattern>& b) {
  std::map<SupportPattern, std::pair<std::vector<int>, std::vector<int>>>
      atoms;
  for (std::size_t i = 0; i < a.size(); ++i)
    atoms[a[i]].first.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < b.size(); ++j)
    atoms[b[j]].second.push_back(static_cast<int>(j));
  std::vector<std::pair<int, int>> out;
  for (auto& [pattern, fibers] : atoms) {
    if (fibers.first.size() != fibers.second.size())
      throw internal_error("atom_match: fiber sizes differ");
    for (std::size_t i = 0; i < fibers.first.size(); ++i)
      out.push_back({fibers.first[i], fibers.second[i]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

QMat pad_basis(const QMat& basis, int left, int total) {
  QMat out;
  for (const QVec& row : basis) {
    QVec v(total, 0);
    for (std::size_t i = 0; i < row.size(); ++i) v[left + i] = row[i];
    out.push_back(v);
  }
  return out;
}

// 0/1 edge coordinates of the special basis rows under the given twist.
std::vector<SupportPattern> edge_patterns(const QMat& rows,
                                          const std::vector<int>& twist,
                                          int edges) {
  for (const QVec& row : rows)
    for (int e = 0; e < edges; ++e) {
      Rat v = row[e] * twist[e];
      if (v != 0 && v != 1)
        throw internal_error("special basis evaluation outside {0,1}");
    }
  std::vector<SupportPattern> out(edges);
  for (int e = 0; e < edges; ++e) {
    out[e].bits.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      out[e].bits[i] = rows[i][e] != 0;
  }
  return out;
}

std::vector<SupportPattern> unit_patterns(const QMat& rows,
                                          const QMat& units) {
  std::vector<SupportPattern> out(units.size());
  for (std::size_t j = 0; j < units.size(); ++j) {
    out[j].bits.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      out[j].bits[i] = dot(rows[i], units[j]) != 0;
  }
  return out;
}

void assert_prep_and_d2(const IntegralLattice& l, const QMat& units) {
  std::size_t r = l.basis.size();
  for (std::size_t i = 0; i < r; ++i) {
    Int support = 0;
    for (const QVec& u : units)
      if (dot(l.basis[i], u) != 0) support += 1;
    if (support != l.gram[i][i])
      throw internal_error("glued support size differs from norm");
    for (std::size_t j = 0; j < r; ++j) {
      Int common = 0;
      for (const QVec& u : units)
        if (dot(l.basis[i], u) != 0 && dot(l.basis[j], u) != 0) common += 1;
      if (common != l.gram[i][j])
        throw internal_error("glued pairing differs from support overlap");
    }
  }
}

}  // namespace

std::optional<EdgeBijection> reconstruct_two_isomorphism(const MultiGraph& g,
                                                         const MultiGraph& h) {
  Contraction gc = contract_cut_edges(g);
  Contraction hc = contract_cut_edges(h);
  int n = gc.graph.edge_count();
  int n2 = hc.graph.edge_count();
  if (n == 0 && n2 == 0) return EdgeBijection{};

  std::optional<TorsorIso> iso = d_equivalent(g, h);
  if (!iso) return std::nullopt;
  if (n != n2)
    throw internal_error("reconstruct: edge counts differ despite d-iso");

  IntegralLattice cut = cut_lattice(gc.graph);
  IntegralLattice flow = flow_lattice(hc.graph);
  IntegralLattice l1 =
      lattice_from_basis(n + n2, pad_basis(cut.basis, 0, n + n2));
  IntegralLattice l2 =
      lattice_from_basis(n + n2, pad_basis(flow.basis, n, n + n2));
  IntegralLattice z2 = glue(l1, l2, *iso);
  if (z2.rank() != n)
    throw internal_error("reconstruct: glue rank differs from edge count");
  std::optional<QMat> units = orthonormal_basis(z2);
  if (!units)
    throw internal_error("reconstruct: glue lattice admits no unit basis");

  QMat units1 = sign_normalize(*units, l1.basis);
  QMat units2 = sign_normalize(*units, l2.basis);
  assert_prep_and_d2(l1, units1);
  assert_prep_and_d2(l2, units2);

  ForestData fg = layered_forest(gc.graph);
  ForestData fh = layered_forest(hc.graph);
  std::vector<SupportPattern> g_edges =
      edge_patterns(cut.basis, fg.o1.direction, n);
  std::vector<SupportPattern> h_edges =
      edge_patterns(flow.basis, fh.o2.direction, n2);
  std::vector<SupportPattern> g_units = unit_patterns(l1.basis, units1);
  std::vector<SupportPattern> h_units = unit_patterns(l2.basis, units2);

  std::vector<int> edge_to_unit(n, -1), unit_to_edge(n, -1);
  for (auto [e, u] : atom_match(g_edges, g_units)) edge_to_unit[e] = u;
  for (auto [u, e] : atom_match(h_units, h_edges)) unit_to_edge[u] = e;

  EdgeBijection contracted;
  for (int e = 0; e < n; ++e)
    contracted.pairs.push_back({e, unit_to_edge[edge_to_unit[e]]});
  if (!verify_two_isomorphism(gc.graph, hc.graph, contracted))
    throw internal_error("reconstruct: produced map fails verification");

  EdgeBijection out;
  for (auto [e, f] : contracted.pairs)
    out.pairs.push_back({gc.edge_ids[e], hc.edge_ids[f]});
  return out;
}

}  // namespace latgraph
