#include "latgraph/selftest.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "latgraph/linalg.hpp"

namespace latgraph {

namespace {

struct Corpus {
  std::vector<MultiGraph> graphs;  // 2-edge-connected, one per iso class
  std::vector<DInvariant> flow_d;
  std::vector<DInvariant> cut_d;
  std::vector<std::vector<bool>> d_equiv;  // pairwise flow d-isomorphism
};

Corpus build_corpus(int max_edges) {
  Corpus c;
  c.graphs = enumerate_multigraphs(max_edges, true);
  for (const MultiGraph& g : c.graphs) {
    c.flow_d.push_back(flow_d_invariant(g, FlowMethod::orientations));
    c.cut_d.push_back(cut_d_invariant_via_orientations(g));
  }
  std::size_t n = c.graphs.size();
  c.d_equiv.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      bool eq = i == j ||
                find_torsor_iso(c.flow_d[i], c.flow_d[j], +1).has_value();
      c.d_equiv[i][j] = c.d_equiv[j][i] = eq;
    }
  return c;
}

QMat pad_rows(const QMat& basis, int left, int total) {
  QMat out;
  for (const QVec& row : basis) {
    QVec v(total, 0);
    for (std::size_t i = 0; i < row.size(); ++i) v[left + i] = row[i];
    out.push_back(v);
  }
  return out;
}

SuiteResult criterion_main_graph(const Corpus& c) {
  SuiteResult r{"main-graph-partition"};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < c.graphs.size(); ++i)
    for (std::size_t j = i + 1; j < c.graphs.size(); ++j) {
      ++pairs;
      bool bf =
          brute_force_two_isomorphism(c.graphs[i], c.graphs[j]).has_value();
      if (bf != c.d_equiv[i][j]) {
        r.detail = "partition mismatch at pair (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        return r;
      }
      if (c.d_equiv[i][j] &&
          !reconstruct_two_isomorphism(c.graphs[i], c.graphs[j])) {
        r.detail = "reconstruction missed pair (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        return r;
      }
    }
  r.passed = true;
  r.detail = std::to_string(c.graphs.size()) + " graphs, " +
             std::to_string(pairs) + " pairs";
  return r;
}

SuiteResult criterion_short_graph(int max_edges) {
  SuiteResult r{"short-covectors"};
  std::vector<MultiGraph> graphs = enumerate_multigraphs(max_edges, true);
  for (const MultiGraph& g : graphs) {
    int n = g.edge_count();
    IntegralLattice cut = cut_lattice(g);
    DiscriminantGroup dg = discriminant_group(cut);
    // Minimal orientation-covector restrictions per class.
    std::map<CharClass, std::pair<Rat, std::set<IVec>>> best;
    QMat ginv = cut.rank() > 0 ? inverse(qmat(cut.gram)) : QMat{};
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      QVec chi(n);
      for (int e = 0; e < n; ++e)
        chi[e] = (mask >> e) & 1 ? Rat(-1) : Rat(1);
      IVec a = restrict_covector(cut, chi);
      Rat norm = 0;
      for (int i = 0; i < cut.rank(); ++i)
        for (int j = 0; j < cut.rank(); ++j)
          norm += Rat(a[i]) * ginv[i][j] * Rat(a[j]);
      CharClass cls = char_class_of(cut, dg, a);
      auto [it, fresh] = best.emplace(cls, std::make_pair(norm, std::set<IVec>{}));
      if (!fresh && norm < it->second.first) {
        it->second.first = norm;
        it->second.second.clear();
      }
      if (norm == it->second.first) it->second.second.insert(a);
    }
    for (const auto& [cls, rep] : char_classes(cut)) {
      ShortResult sr = minimize_in_class(cut, rep);
      std::set<IVec> cvp(sr.covectors.begin(), sr.covectors.end());
      const auto& [norm, oriented] = best.at(cls);
      if (cvp != oriented || norm != sr.min_norm) {
        r.detail = "short set mismatch on " + format_edge_list(g);
        return r;
      }
    }
  }
  r.passed = true;
  r.detail = std::to_string(graphs.size()) + " graphs";
  return r;
}

SuiteResult criterion_numeric_example() {
  SuiteResult r{"numeric-example"};
  IntegralLattice z2 = lattice_from_basis(2, {{1, 0}, {0, 1}});
  IntegralLattice l1 = lattice_from_basis(2, {{1, 2}});
  if (discriminant_group(l1).order() != 5) {
    r.detail = "disc != 5";
    return r;
  }
  ShortResult sr = minimize_in_class(z2, canonical_char(z2));
  if (sr.covectors.size() != 4) {
    r.detail = "|Short(Z^2)| != 4";
    return r;
  }
  if (short_restriction_surjects(l1)) {
    r.detail = "restriction unexpectedly surjects";
    return r;
  }
  r.passed = true;
  r.detail = "disc 5, 4 short covectors, no surjection";
  return r;
}

SuiteResult criterion_van_der_blij(const Corpus& c) {
  SuiteResult r{"van-der-blij"};
  for (int n = 0; n <= 6; ++n) {
    QMat basis = qmat_identity(n);
    IntegralLattice zn = lattice_from_basis(n, basis);
    if (rho(zn, CharClass{}) != 0) {
      r.detail = "rho(Z^" + std::to_string(n) + ") != 0";
      return r;
    }
  }
  std::size_t glued = 0;
  for (std::size_t i = 0; i < c.graphs.size(); ++i)
    for (std::size_t j = 0; j < c.graphs.size(); ++j) {
      if (!c.d_equiv[i][j]) continue;
      auto iso = find_torsor_iso(c.cut_d[i], c.flow_d[j], -1);
      if (!iso) {
        r.detail = "missing anti-isomorphism for glue";
        return r;
      }
      int n1 = c.graphs[i].edge_count(), n2 = c.graphs[j].edge_count();
      IntegralLattice l1 = lattice_from_basis(
          n1 + n2, pad_rows(cut_lattice(c.graphs[i]).basis, 0, n1 + n2));
      IntegralLattice l2 = lattice_from_basis(
          n1 + n2, pad_rows(flow_lattice(c.graphs[j]).basis, n1, n1 + n2));
      IntegralLattice z = glue(l1, l2, *iso);
      ++glued;
      if (rho(z, CharClass{}) != 0) {
        r.detail = "rho != 0 on glue of pair (" + std::to_string(i) + "," +
                   std::to_string(j) + ")";
        return r;
      }
    }
  r.passed = true;
  r.detail = std::to_string(glued) + " glue lattices";
  return r;
}

SuiteResult criterion_kirchhoff(int max_edges) {
  SuiteResult r{"kirchhoff"};
  std::vector<MultiGraph> graphs = enumerate_multigraphs(max_edges, false);
  for (const MultiGraph& g : graphs) {
    Int trees = spanning_tree_count(g);
    Int disc_c = discriminant_group(cut_lattice(g)).order();
    Int disc_f = discriminant_group(flow_lattice(g)).order();
    if (trees != disc_c || trees != disc_f) {
      r.detail = "disc mismatch on " + format_edge_list(g);
      return r;
    }
  }
  r.passed = true;
  r.detail = std::to_string(graphs.size()) + " graphs";
  return r;
}

SuiteResult criterion_switch_pairs(int max_edges, int pair_count) {
  SuiteResult r{"reconstruction-round-trip"};
  std::vector<MultiGraph> corpus = enumerate_multigraphs(max_edges, true);
  std::erase_if(corpus,
                [](const MultiGraph& g) { return g.edge_count() < 3; });
  std::mt19937 rng(20240517);
  auto random_switch = [&](const MultiGraph& g) -> MultiGraph {
    for (int attempt = 0; attempt < 30; ++attempt) {
      if (g.vertex_count < 2) break;
      int v = static_cast<int>(rng() % g.vertex_count);
      int w = static_cast<int>(rng() % g.vertex_count);
      if (v == w) continue;
      if (v > w) std::swap(v, w);
      std::vector<int> comp = components_excluding(g, {v, w});
      // Pieces: connected components off {v,w}, plus each direct v-w edge.
      std::map<int, int> comp_piece;
      int pieces = 0;
      for (int x = 0; x < g.vertex_count; ++x)
        if (comp[x] >= 0 && !comp_piece.count(comp[x]))
          comp_piece[comp[x]] = pieces++;
      std::vector<int> edge_piece(g.edge_count(), -1);
      for (int e = 0; e < g.edge_count(); ++e) {
        auto [a, b] = g.edges[e];
        int x = a != v && a != w ? a : b != v && b != w ? b : -1;
        if (x >= 0)
          edge_piece[e] = comp_piece[comp[x]];
        else if ((a == v && b == w) || (a == w && b == v))
          edge_piece[e] = pieces++;
      }
      if (pieces < 2) continue;
      std::uint32_t pick = rng() % ((1u << pieces) - 2) + 1;
      std::vector<bool> side(g.edge_count(), false);
      for (int e = 0; e < g.edge_count(); ++e)
        if (edge_piece[e] >= 0 && ((pick >> edge_piece[e]) & 1))
          side[e] = true;
      return whitney_switch(g, side, v, w);
    }
    return g;
  };
  for (int i = 0; i < pair_count; ++i) {
    const MultiGraph& g = corpus[rng() % corpus.size()];
    MultiGraph h = g;
    int switches = 1 + static_cast<int>(rng() % 3);
    for (int s = 0; s < switches; ++s) h = random_switch(h);
    std::optional<EdgeBijection> f = reconstruct_two_isomorphism(g, h);
    if (!f) {
      r.detail = "pair " + std::to_string(i) + " not reconstructed";
      return r;
    }
    Contraction gc = contract_cut_edges(g), hc = contract_cut_edges(h);
    EdgeBijection contracted;
    std::vector<int> gpos(g.edge_count(), -1), hpos(h.edge_count(), -1);
    for (std::size_t e = 0; e < gc.edge_ids.size(); ++e)
      gpos[gc.edge_ids[e]] = static_cast<int>(e);
    for (std::size_t e = 0; e < hc.edge_ids.size(); ++e)
      hpos[hc.edge_ids[e]] = static_cast<int>(e);
    for (auto [a, b] : f->pairs)
      contracted.pairs.push_back({gpos[a], hpos[b]});
    if (!verify_two_isomorphism(gc.graph, hc.graph, contracted)) {
      r.detail = "pair " + std::to_string(i) + " failed verification";
      return r;
    }
  }
  r.passed = true;
  r.detail = std::to_string(pair_count) + " switch pairs";
  return r;
}

SuiteResult criterion_two_bridge(int max_crossings) {
  SuiteResult r{"two-bridge-classes"};
  auto classes = two_bridge_mutation_classes(max_crossings);
  std::size_t specs = 0;
  for (const auto& cls : classes) specs += cls.size();
  r.passed = true;
  r.detail = std::to_string(specs) + " specs in " +
             std::to_string(classes.size()) + " classes";
  return r;
}

SuiteResult criterion_crossing_number(int max_crossings) {
  SuiteResult r{"crossing-number"};
  auto classes = two_bridge_mutation_classes(max_crossings);
  int positive = 0;
  for (const auto& cls : classes) {
    PDCode pd1 = two_bridge_pd(cls.front());
    PDCode pd2 = two_bridge_pd(reversed_spec(cls.front()));
    MutantVerdict v = mutation_equivalent(pd1, pd2);
    if (!v.equivalent) {
      r.detail = "reversal pair not mutants: " +
                 format_two_bridge(cls.front());
      return r;
    }
    if (pd1.crossings() != pd2.crossings()) {
      r.detail = "crossing numbers differ: " + format_two_bridge(cls.front());
      return r;
    }
    ++positive;
  }
  // Negative control across neighboring classes.
  for (std::size_t i = 0; i + 1 < classes.size(); ++i) {
    PDCode pd1 = two_bridge_pd(classes[i].front());
    PDCode pd2 = two_bridge_pd(classes[i + 1].front());
    if (mutation_equivalent(pd1, pd2).equivalent) {
      r.detail = "distinct classes decided equivalent";
      return r;
    }
  }
  r.passed = true;
  r.detail = std::to_string(positive) + " positive decisions";
  return r;
}

SuiteResult criterion_method_equivalence(const Corpus& c) {
  SuiteResult r{"method-equivalence"};
  for (std::size_t i = 0; i < c.graphs.size(); ++i) {
    DInvariant cvp = flow_d_invariant(c.graphs[i], FlowMethod::cvp);
    if (cvp.factors != c.flow_d[i].factors ||
        cvp.values != c.flow_d[i].values) {
      r.detail = "method mismatch on " + format_edge_list(c.graphs[i]);
      return r;
    }
  }
  r.passed = true;
  r.detail = std::to_string(c.graphs.size()) + " graphs";
  return r;
}

SuiteResult guarded(SuiteResult (*fn)(const Corpus&), const Corpus& c,
                    const char* name) {
  try {
    return fn(c);
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

template <typename F>
SuiteResult guarded_with(const char* name, F fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

}  // namespace

std::vector<SuiteResult> run_acceptance(int max_edges) {
  int short_edges = std::min(max_edges, 5);
  int kirchhoff_edges = std::min(max_edges + 1, 7);
  int switch_edges = std::min(max_edges + 2, 8);
  int pair_count = max_edges >= 6 ? 200 : 40;
  int crossings = std::min(max_edges + 2, 8);

  Corpus corpus = build_corpus(max_edges);
  std::vector<SuiteResult> out;
  out.push_back(guarded(criterion_main_graph, corpus, "main-graph-partition"));
  out.push_back(guarded_with("short-covectors", [&] {
    return criterion_short_graph(short_edges);
  }));
  out.push_back(
      guarded_with("numeric-example", criterion_numeric_example));
  out.push_back(guarded(criterion_van_der_blij, corpus, "van-der-blij"));
  out.push_back(guarded_with("kirchhoff", [&] {
    return criterion_kirchhoff(kirchhoff_edges);
  }));
  out.push_back(guarded_with("reconstruction-round-trip", [&] {
    return criterion_switch_pairs(switch_edges, pair_count);
  }));
  out.push_back(guarded_with("two-bridge-classes", [&] {
    return criterion_two_bridge(crossings);
  }));
  out.push_back(guarded_with("crossing-number", [&] {
    return criterion_crossing_number(crossings);
  }));
  out.push_back(
      guarded(criterion_method_equivalence, corpus, "method-equivalence"));
  return out;
}

bool report_acceptance(const std::vector<SuiteResult>& results,
                       std::ostream& out) {
  bool all = true;
  for (const SuiteResult& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << " " << r.name;
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
    all = all && r.passed;
  }
  return all;
}

}  // namespace latgraph
