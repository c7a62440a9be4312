#include "latgraph/graph_lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "latgraph/linalg.hpp"

namespace latgraph {

namespace {

IntegralLattice lattice_from_signed_rows(
    const MultiGraph& g, const std::vector<std::vector<SignedEdge>>& rows) {
  QMat basis;
  for (const auto& row : rows) {
    QVec v(g.edge_count(), 0);
    for (const SignedEdge& se : row) v[se.edge] = se.sign;
    basis.push_back(v);
  }
  return lattice_from_basis(g.edge_count(), basis);
}

}  // namespace

IntegralLattice cut_lattice(const MultiGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("cut_lattice: disconnected graph");
  ForestData fd = layered_forest(g);
  std::vector<std::vector<SignedEdge>> rows;
  for (int e = 0; e < g.edge_count(); ++e)
    if (fd.forest.in_forest[e]) rows.push_back(fundamental_cut(g, fd, e));
  return lattice_from_signed_rows(g, rows);
}

IntegralLattice flow_lattice(const MultiGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("flow_lattice: disconnected graph");
  ForestData fd = layered_forest(g);
  std::vector<std::vector<SignedEdge>> rows;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!fd.forest.in_forest[e]) rows.push_back(fundamental_cycle(g, fd, e));
  return lattice_from_signed_rows(g, rows);
}

IMat goeritz_gram(const MultiGraph& g, int root) {
  if (!is_connected(g))
    throw std::invalid_argument("goeritz_gram: disconnected graph");
  if (root < 0 || root >= g.vertex_count)
    throw std::invalid_argument("goeritz_gram: bad root");
  std::vector<int> index(g.vertex_count, -1);
  int k = 0;
  for (int v = 0; v < g.vertex_count; ++v)
    if (v != root) index[v] = k++;
  IMat m(k, IVec(k, 0));
  for (auto [u, v] : g.edges) {
    if (u != root) m[index[u]][index[u]] += 1;
    if (v != root) m[index[v]][index[v]] += 1;
    if (u != root && v != root) {
      m[index[u]][index[v]] -= 1;
      m[index[v]][index[u]] -= 1;
    }
  }
  return m;
}

Int spanning_tree_count(const MultiGraph& g) {
  IMat m = goeritz_gram(g, 0);
  if (m.empty()) return 1;
  Rat det = determinant(qmat(m));
  return det.get_num();
}

QVec orientation_covector(const MultiGraph& g, const Orientation& o) {
  QVec chi(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) chi[e] = Rat(o.direction[e]);
  return chi;
}

namespace {

struct OrientationScan {
  IntegralLattice cut, flow;
  DiscriminantGroup dg_cut, dg_flow;
  std::map<CharClass, Rat> cut_min;            // min restricted norm per class
  std::map<CharClass, CharClass> class_pairs;  // cut class -> flow class
};

OrientationScan scan_orientations(const MultiGraph& g, int edge_budget) {
  int n = g.edge_count();
  if (n > edge_budget)
    throw budget_error("orientation scan: edge budget exceeded");
  OrientationScan s;
  s.cut = cut_lattice(g);
  s.flow = flow_lattice(g);
  s.dg_cut = discriminant_group(s.cut);
  s.dg_flow = discriminant_group(s.flow);
  QMat ginv_cut =
      s.cut.rank() > 0 ? inverse(qmat(s.cut.gram)) : QMat{};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Orientation o;
    o.direction.resize(n);
    for (int e = 0; e < n; ++e)
      o.direction[e] = (mask >> e) & 1 ? -1 : +1;
    QVec chi = orientation_covector(g, o);
    IVec a_cut = restrict_covector(s.cut, chi);
    IVec a_flow = restrict_covector(s.flow, chi);
    CharClass cc = char_class_of(s.cut, s.dg_cut, a_cut);
    CharClass fc = char_class_of(s.flow, s.dg_flow, a_flow);
    Rat norm = 0;
    for (int i = 0; i < s.cut.rank(); ++i)
      for (int j = 0; j < s.cut.rank(); ++j)
        norm += Rat(a_cut[i]) * ginv_cut[i][j] * Rat(a_cut[j]);
    auto [it, fresh] = s.cut_min.emplace(cc, norm);
    if (!fresh && norm < it->second) it->second = norm;
    auto [pit, pfresh] = s.class_pairs.emplace(cc, fc);
    if (!pfresh && pit->second != fc)
      throw internal_error("orientation scan: inconsistent class pairing");
  }
  if (Int(s.cut_min.size()) != s.dg_cut.order())
    throw internal_error("orientation scan: missing classes");
  return s;
}

}  // namespace

DInvariant cut_d_invariant_via_orientations(const MultiGraph& g,
                                            int edge_budget) {
  OrientationScan s = scan_orientations(g, edge_budget);
  DInvariant d;
  d.factors = s.dg_cut.invariant_factors;
  d.base = CharClass{IVec(d.factors.size(), 0)};
  for (const auto& [cls, norm] : s.cut_min)
    d.values[cls] = (norm - s.cut.rank()) / 4;
  return d;
}

DInvariant flow_d_invariant(const MultiGraph& g, FlowMethod method,
                            int edge_budget) {
  if (method == FlowMethod::cvp) return d_invariant(flow_lattice(g));
  OrientationScan s = scan_orientations(g, edge_budget);
  if (s.dg_flow.invariant_factors != s.dg_cut.invariant_factors)
    throw internal_error("flow_d_invariant: invariant factor mismatch");
  DInvariant d;
  d.factors = s.dg_flow.invariant_factors;
  d.base = CharClass{IVec(d.factors.size(), 0)};
  for (const auto& [cc, norm] : s.cut_min)
    d.values[s.class_pairs.at(cc)] = -(norm - s.cut.rank()) / 4;
  if (d.values.size() != s.class_pairs.size())
    throw internal_error("flow_d_invariant: class pairing not injective");
  return d;
}

TorsorIso natural_cut_flow_iso(const MultiGraph& g, int edge_budget) {
  OrientationScan s = scan_orientations(g, edge_budget);
  if (s.dg_flow.invariant_factors != s.dg_cut.invariant_factors)
    throw internal_error("natural_cut_flow_iso: invariant factor mismatch");
  IVec factors = s.dg_cut.invariant_factors;
  std::size_t k = factors.size();
  TorsorIso iso;
  iso.factors = factors;
  iso.sign = -1;
  iso.translation =
      s.class_pairs.at(CharClass{IVec(k, 0)}).smith_coords;
  iso.matrix.assign(k, IVec(k, 0));
  for (std::size_t j = 0; j < k; ++j) {
    IVec ej(k, 0);
    ej[j] = int_mod(Int(1), factors[j]);
    const IVec& img = s.class_pairs.at(CharClass{ej}).smith_coords;
    for (std::size_t i = 0; i < k; ++i)
      iso.matrix[i][j] =
          int_mod(img[i] - iso.translation[i], factors[i]);
  }
  // The pairing must be this affine map on every class.
  for (const auto& [cc, fc] : s.class_pairs)
    if (iso.apply(cc) != fc)
      throw internal_error("natural_cut_flow_iso: pairing not affine");
  return iso;
}

std::optional<Orientation> orientation_with_indegrees(
    const MultiGraph& g, const std::vector<int>& indegree) {
  if (static_cast<int>(indegree.size()) != g.vertex_count)
    throw std::invalid_argument("orientation_with_indegrees: size mismatch");
  long total = 0;
  for (int v = 0; v < g.vertex_count; ++v) {
    if (indegree[v] < 0) return std::nullopt;
    total += indegree[v];
  }
  if (total != g.edge_count()) return std::nullopt;

  // One slot per requested incoming edge; Kuhn matching edges -> slots.
  std::vector<int> slot_vertex;
  std::vector<std::vector<int>> slots_of(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v)
    for (int i = 0; i < indegree[v]; ++i) {
      slots_of[v].push_back(static_cast<int>(slot_vertex.size()));
      slot_vertex.push_back(v);
    }
  std::vector<int> slot_edge(slot_vertex.size(), -1);
  std::vector<bool> visited;
  std::function<bool(int)> augment = [&](int e) -> bool {
    for (int v : {g.edges[e].first, g.edges[e].second})
      for (int slot : slots_of[v]) {
        if (visited[slot]) continue;
        visited[slot] = true;
        if (slot_edge[slot] == -1 || augment(slot_edge[slot])) {
          slot_edge[slot] = e;
          return true;
        }
      }
    return false;
  };
  std::vector<int> head(g.edge_count(), -1);
  for (int e = 0; e < g.edge_count(); ++e) {
    visited.assign(slot_vertex.size(), false);
    if (!augment(e)) return std::nullopt;
  }
  for (std::size_t slot = 0; slot < slot_edge.size(); ++slot)
    head[slot_edge[slot]] = slot_vertex[slot];
  Orientation o;
  o.direction.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e)
    o.direction[e] = head[e] == g.edges[e].second ? +1 : -1;
  return o;
}

}  // namespace latgraph
