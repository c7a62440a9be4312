#include "latgraph/multigraph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "latgraph/numeric.hpp"

namespace latgraph {

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const MultiGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    adj[u].push_back({e, v});
    adj[v].push_back({e, u});
  }
  return adj;
}

}  // namespace

MultiGraph parse_edge_list(const std::string& text) {
  MultiGraph g;
  bool have_v = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto fail = [&](const std::string& what) {
      throw parse_error("line " + std::to_string(lineno) + ": " + what);
    };
    if (tag == "v") {
      long count;
      if (have_v) fail("duplicate vertex-count line");
      if (!(ls >> count) || count < 0) fail("malformed vertex count");
      std::string extra;
      if (ls >> extra) fail("trailing tokens");
      g.vertex_count = static_cast<int>(count);
      have_v = true;
    } else if (tag == "e") {
      long u, v;
      if (!have_v) fail("edge before vertex-count line");
      if (!(ls >> u >> v)) fail("malformed edge line");
      std::string extra;
      if (ls >> extra) fail("trailing tokens");
      if (u < 0 || v < 0 || u >= g.vertex_count || v >= g.vertex_count)
        fail("vertex index out of range");
      if (u == v) fail("loop edge");
      g.edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    } else {
      fail("unknown directive '" + tag + "'");
    }
  }
  if (!have_v) throw parse_error("missing vertex-count line");
  return g;
}

std::string format_edge_list(const MultiGraph& g) {
  std::ostringstream out;
  out << "v " << g.vertex_count << "\n";
  for (auto [u, v] : g.edges) out << "e " << u << " " << v << "\n";
  return out.str();
}

std::vector<int> components_excluding(const MultiGraph& g,
                                      const std::vector<int>& removed) {
  std::vector<int> comp(g.vertex_count, -2);
  for (int v : removed) comp[v] = -1;
  auto adj = adjacency(g);
  int c = 0;
  for (int s = 0; s < g.vertex_count; ++s) {
    if (comp[s] != -2) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [e, w] : adj[v])
        if (comp[w] == -2) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
    ++c;
  }
  return comp;
}

bool is_connected(const MultiGraph& g) {
  if (g.vertex_count == 0) return true;
  auto comp = components_excluding(g, {});
  return *std::max_element(comp.begin(), comp.end()) == 0;
}

std::vector<bool> cut_edges(const MultiGraph& g) {
  int m = g.vertex_count, n = g.edge_count();
  std::vector<bool> bridge(n, false);
  auto adj = adjacency(g);
  std::vector<int> disc(m, -1), low(m, 0);
  int timer = 0;
  // Iterative DFS keyed by the edge used to enter each vertex.
  struct Frame {
    int v;
    int via_edge;
    std::size_t next = 0;
  };
  for (int s = 0; s < m; ++s) {
    if (disc[s] != -1) continue;
    std::vector<Frame> stack{{s, -1}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [e, w] = adj[f.v][f.next++];
        if (e == f.via_edge) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v, via = f.via_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridge[via] = true;
        }
      }
    }
  }
  return bridge;
}

bool is_two_edge_connected(const MultiGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("is_two_edge_connected: disconnected graph");
  auto b = cut_edges(g);
  return std::none_of(b.begin(), b.end(), [](bool x) { return x; });
}

Contraction contract_cut_edges(const MultiGraph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("contract_cut_edges: disconnected graph");
  auto bridge = cut_edges(g);
  // Union endpoints of every cut-edge.
  std::vector<int> parent(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) parent[v] = v;
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (int e = 0; e < g.edge_count(); ++e)
    if (bridge[e]) parent[find(g.edges[e].first)] = find(g.edges[e].second);

  Contraction res;
  res.vertex_map.assign(g.vertex_count, -1);
  int next = 0;
  for (int v = 0; v < g.vertex_count; ++v) {
    int r = find(v);
    if (res.vertex_map[r] == -1) res.vertex_map[r] = next++;
    res.vertex_map[v] = res.vertex_map[r];
  }
  res.graph.vertex_count = g.vertex_count == 0 ? 0 : next;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (bridge[e]) continue;
    res.graph.edges.push_back({res.vertex_map[g.edges[e].first],
                               res.vertex_map[g.edges[e].second]});
    res.edge_ids.push_back(e);
  }
  return res;
}

ForestData layered_forest(const MultiGraph& g) {
  int m = g.vertex_count, n = g.edge_count();
  auto adj = adjacency(g);
  ForestData fd;
  fd.forest.in_forest.assign(n, false);
  fd.forest.layer.assign(m, -1);

  // Layer 0: least vertex of each connected component.
  auto comp = components_excluding(g, {});
  std::set<int> comps_seen;
  for (int v = 0; v < m; ++v)
    if (comps_seen.insert(comp[v]).second) fd.forest.layer[v] = 0;

  int current = 0;
  int assigned = static_cast<int>(comps_seen.size());
  while (assigned < m) {
    // Components of the graph induced on unassigned vertices.
    std::vector<int> sub(m, -2);
    for (int v = 0; v < m; ++v)
      if (fd.forest.layer[v] != -1) sub[v] = -1;
    int nc = 0;
    for (int s = 0; s < m; ++s) {
      if (sub[s] != -2) continue;
      std::vector<int> stack{s};
      sub[s] = nc;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [e, w] : adj[v])
          if (sub[w] == -2) {
            sub[w] = nc;
            stack.push_back(w);
          }
      }
      ++nc;
    }
    // One root per component: least vertex adjacent to the current layer,
    // attached by its least-id edge.
    std::vector<int> root(nc, -1), root_edge(nc, -1);
    for (int v = 0; v < m; ++v) {
      int c = sub[v];
      if (c < 0 || root[c] != -1) continue;
      int best_edge = -1;
      for (auto [e, w] : adj[v])
        if (fd.forest.layer[w] == current &&
            (best_edge == -1 || e < best_edge))
          best_edge = e;
      if (best_edge != -1) {
        root[c] = v;
        root_edge[c] = best_edge;
      }
    }
    for (int c = 0; c < nc; ++c) {
      if (root[c] == -1)
        throw internal_error("layered_forest: stranded component");
      fd.forest.layer[root[c]] = current + 1;
      fd.forest.in_forest[root_edge[c]] = true;
      ++assigned;
    }
    ++current;
  }

  fd.o1.direction.assign(n, 0);
  fd.o2.direction.assign(n, 0);
  for (int e = 0; e < n; ++e) {
    auto [u, v] = g.edges[e];
    int lu = fd.forest.layer[u], lv = fd.forest.layer[v];
    if (lu == lv) throw internal_error("layered_forest: equal-layer edge");
    fd.o1.direction[e] = lu < lv ? +1 : -1;
    fd.o2.direction[e] =
        fd.forest.in_forest[e] ? fd.o1.direction[e] : -fd.o1.direction[e];
  }
  return fd;
}

std::vector<SignedEdge> fundamental_cut(const MultiGraph& g,
                                        const ForestData& fd, int e) {
  if (e < 0 || e >= g.edge_count() || !fd.forest.in_forest[e])
    throw std::invalid_argument("fundamental_cut: edge not in forest");
  auto adj = adjacency(g);
  // K1 = forest component of the O1-tail of e once e is removed.
  auto [u, v] = g.edges[e];
  int tail = fd.forest.layer[u] < fd.forest.layer[v] ? u : v;
  std::vector<bool> in_k1(g.vertex_count, false);
  std::vector<int> stack{tail};
  in_k1[tail] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [f, y] : adj[x])
      if (f != e && fd.forest.in_forest[f] && !in_k1[y]) {
        in_k1[y] = true;
        stack.push_back(y);
      }
  }
  std::vector<SignedEdge> cut;
  for (int f = 0; f < g.edge_count(); ++f) {
    auto [a, b] = g.edges[f];
    if (in_k1[a] == in_k1[b]) continue;
    cut.push_back({f, in_k1[a] ? +1 : -1});  // cut orientation: out of K1
  }
  return cut;
}

std::vector<SignedEdge> fundamental_cycle(const MultiGraph& g,
                                          const ForestData& fd, int e) {
  if (e < 0 || e >= g.edge_count() || fd.forest.in_forest[e])
    throw std::invalid_argument("fundamental_cycle: edge in forest");
  auto adj = adjacency(g);
  auto [u, v] = g.edges[e];
  // O2 directs non-forest edges from the higher layer to the lower one.
  int hi = fd.forest.layer[u] > fd.forest.layer[v] ? u : v;
  int lo = hi == u ? v : u;
  // Forest path lo -> hi.
  std::vector<int> via_edge(g.vertex_count, -1), prev(g.vertex_count, -1);
  std::vector<bool> seen(g.vertex_count, false);
  std::vector<int> stack{lo};
  seen[lo] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [f, y] : adj[x])
      if (fd.forest.in_forest[f] && !seen[y]) {
        seen[y] = true;
        prev[y] = x;
        via_edge[y] = f;
        stack.push_back(y);
      }
  }
  if (!seen[hi]) throw internal_error("fundamental_cycle: endpoints split");
  std::vector<SignedEdge> cyc;
  cyc.push_back({e, g.edges[e].first == hi ? +1 : -1});  // traversed hi -> lo
  std::vector<SignedEdge> path;
  for (int x = hi; x != lo; x = prev[x]) {
    int f = via_edge[x];
    // Traversal runs lo -> hi, so f is traversed prev[x] -> x.
    path.push_back({f, g.edges[f].first == prev[x] ? +1 : -1});
  }
  std::reverse(path.begin(), path.end());
  cyc.insert(cyc.end(), path.begin(), path.end());
  std::sort(cyc.begin(), cyc.end(),
            [](const SignedEdge& a, const SignedEdge& b) { return a.edge < b.edge; });
  return cyc;
}

MultiGraph whitney_switch(const MultiGraph& g,
                          const std::vector<bool>& side_edges, int v, int w) {
  if (v < 0 || w < 0 || v >= g.vertex_count || w >= g.vertex_count || v == w)
    throw std::invalid_argument("whitney_switch: bad separation vertices");
  if (static_cast<int>(side_edges.size()) != g.edge_count())
    throw std::invalid_argument("whitney_switch: side mask size mismatch");
  // No vertex outside {v, w} may touch both sides.
  for (int x = 0; x < g.vertex_count; ++x) {
    if (x == v || x == w) continue;
    bool in_side = false, in_rest = false;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (g.edges[e].first != x && g.edges[e].second != x) continue;
      (side_edges[e] ? in_side : in_rest) = true;
    }
    if (in_side && in_rest)
      throw std::invalid_argument("whitney_switch: {v,w} does not separate");
  }
  MultiGraph out = g;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!side_edges[e]) continue;
    auto& [a, b] = out.edges[e];
    a = a == v ? w : a == w ? v : a;
    b = b == v ? w : b == w ? v : b;
  }
  return out;
}

std::vector<EdgeSet> cycle_space_basis(const MultiGraph& g) {
  if (g.edge_count() > 63)
    throw budget_error("cycle_space_basis: too many edges");
  auto fd = layered_forest(g);
  std::vector<EdgeSet> basis;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (fd.forest.in_forest[e]) continue;
    EdgeSet mask = 0;
    for (const auto& se : fundamental_cycle(g, fd, e))
      mask |= EdgeSet{1} << se.edge;
    basis.push_back(mask);
  }
  return basis;
}

std::vector<EdgeSet> cycle_space(const MultiGraph& g) {
  auto basis = cycle_space_basis(g);
  if (basis.size() > 22) throw budget_error("cycle_space: dimension too large");
  std::vector<EdgeSet> all{0};
  for (EdgeSet b : basis) {
    std::size_t sz = all.size();
    for (std::size_t i = 0; i < sz; ++i) all.push_back(all[i] ^ b);
  }
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

// Row echelon over F2; returns pivoted rows.
std::vector<EdgeSet> f2_echelon(std::vector<EdgeSet> rows) {
  std::vector<EdgeSet> ech;
  for (EdgeSet r : rows) {
    for (EdgeSet p : ech)
      if (r & (p & -p)) r ^= p;
    if (r) ech.push_back(r);
  }
  return ech;
}

bool f2_in_span(const std::vector<EdgeSet>& ech, EdgeSet r) {
  for (EdgeSet p : ech)
    if (r & (p & -p)) r ^= p;
  return r == 0;
}

}  // namespace

bool verify_two_isomorphism(const MultiGraph& g, const MultiGraph& h,
                            const EdgeBijection& f) {
  if (g.edge_count() != h.edge_count())
    throw std::invalid_argument("verify_two_isomorphism: edge count mismatch");
  int n = g.edge_count();
  std::vector<int> map(n, -1), used(n, 0);
  if (static_cast<int>(f.pairs.size()) != n)
    throw std::invalid_argument("verify_two_isomorphism: not a total bijection");
  for (auto [a, b] : f.pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n || map[a] != -1 || used[b])
      throw std::invalid_argument("verify_two_isomorphism: not a bijection");
    map[a] = b;
    used[b] = 1;
  }
  auto gb = cycle_space_basis(g);
  auto hb = cycle_space_basis(h);
  if (gb.size() != hb.size()) return false;
  auto ech = f2_echelon(hb);
  for (EdgeSet c : gb) {
    EdgeSet img = 0;
    for (int e = 0; e < n; ++e)
      if (c & (EdgeSet{1} << e)) img |= EdgeSet{1} << map[e];
    if (!f2_in_span(ech, img)) return false;
  }
  return true;
}

std::optional<EdgeBijection> brute_force_two_isomorphism(const MultiGraph& g,
                                                         const MultiGraph& h,
                                                         int edge_budget) {
  auto gc = contract_cut_edges(g);
  auto hc = contract_cut_edges(h);
  int n = gc.graph.edge_count();
  if (n != hc.graph.edge_count()) return std::nullopt;
  if (n > edge_budget || hc.graph.edge_count() > edge_budget)
    throw budget_error("brute_force_two_isomorphism: edge budget exceeded");
  if (n == 0) return EdgeBijection{};

  auto g_cycles = cycle_space(gc.graph);
  auto h_cycles = cycle_space(hc.graph);
  if (g_cycles.size() != h_cycles.size()) return std::nullopt;
  std::unordered_set<EdgeSet> h_set(h_cycles.begin(), h_cycles.end());

  // Parallel-class sizes must match pairwise (2-cycles map to 2-cycles).
  auto pclass = [](const MultiGraph& x) {
    std::map<std::pair<int, int>, int> count;
    for (auto [u, v] : x.edges) count[{std::min(u, v), std::max(u, v)}]++;
    std::vector<int> per;
    for (auto [u, v] : x.edges) per.push_back(count[{std::min(u, v), std::max(u, v)}]);
    return per;
  };
  auto gp = pclass(gc.graph), hp = pclass(hc.graph);

  // For pruning: cycles of g indexed by the largest edge they contain.
  std::vector<std::vector<EdgeSet>> closing(n);
  for (EdgeSet c : g_cycles) {
    if (!c) continue;
    int hi = 63 - __builtin_clzll(c);
    closing[hi].push_back(c);
  }

  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> extend = [&](int e) -> bool {
    if (e == n) return true;
    for (int f = 0; f < n; ++f) {
      if (used[f] || gp[e] != hp[f]) continue;
      map[e] = f;
      used[f] = true;
      bool ok = true;
      for (EdgeSet c : closing[e]) {
        EdgeSet img = 0;
        for (int x = 0; x <= e; ++x)
          if (c & (EdgeSet{1} << x)) img |= EdgeSet{1} << map[x];
        if (!h_set.count(img)) {
          ok = false;
          break;
        }
      }
      if (ok && extend(e + 1)) return true;
      used[f] = false;
      map[e] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;

  EdgeBijection out;
  for (int e = 0; e < n; ++e)
    out.pairs.push_back({gc.edge_ids[e], hc.edge_ids[map[e]]});
  return out;
}

namespace {

// Iteratively refined vertex coloring; invariant under isomorphism.
std::vector<int> refine_colors(const MultiGraph& g) {
  int m = g.vertex_count;
  std::vector<int> color(m, 0);
  {
    std::vector<int> deg(m, 0);
    for (auto [u, v] : g.edges) {
      deg[u]++;
      deg[v]++;
    }
    std::map<int, int> dense;
    for (int d : deg) dense.emplace(d, 0);
    int c = 0;
    for (auto& [k, id] : dense) id = c++;
    for (int v = 0; v < m; ++v) color[v] = dense[deg[v]];
  }
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> key(m);
    for (int v = 0; v < m; ++v) key[v].first = color[v];
    for (auto [u, v] : g.edges) {
      key[u].second.push_back(color[v]);
      key[v].second.push_back(color[u]);
    }
    for (auto& k : key) std::sort(k.second.begin(), k.second.end());
    std::map<std::pair<int, std::vector<int>>, int> dense;
    for (const auto& k : key) dense.emplace(k, 0);
    int c = 0;
    for (auto& [k, id] : dense) id = c++;
    std::vector<int> next(m);
    for (int v = 0; v < m; ++v) next[v] = dense[key[v]];
    if (next == color) return color;
    color = std::move(next);
  }
}

// Canonical certificate: lexicographically least sorted edge list over all
// relabelings that respect the refined color classes.
std::string certificate(const MultiGraph& g) {
  int m = g.vertex_count;
  auto color = refine_colors(g);
  std::vector<std::vector<int>> cells;
  {
    std::map<int, std::vector<int>> by_color;
    for (int v = 0; v < m; ++v) by_color[color[v]].push_back(v);
    for (auto& [c, vs] : by_color) cells.push_back(vs);
  }
  std::vector<int> label(m);
  std::vector<std::pair<int, int>> best;
  bool have_best = false;
  std::function<void(std::size_t)> walk = [&](std::size_t ci) {
    if (ci == cells.size()) {
      std::vector<std::pair<int, int>> rel;
      for (auto [u, v] : g.edges) {
        int a = label[u], b = label[v];
        rel.push_back({std::min(a, b), std::max(a, b)});
      }
      std::sort(rel.begin(), rel.end());
      if (!have_best || rel < best) {
        best = std::move(rel);
        have_best = true;
      }
      return;
    }
    std::vector<int> cell = cells[ci];
    int base = 0;
    for (std::size_t j = 0; j < ci; ++j) base += static_cast<int>(cells[j].size());
    std::sort(cell.begin(), cell.end());
    do {
      for (std::size_t i = 0; i < cell.size(); ++i)
        label[cell[i]] = base + static_cast<int>(i);
      walk(ci + 1);
    } while (std::next_permutation(cell.begin(), cell.end()));
  };
  walk(0);
  std::ostringstream out;
  out << m << ":";
  for (auto [u, v] : best) out << u << "," << v << ";";
  return out.str();
}

}  // namespace

std::vector<MultiGraph> enumerate_multigraphs(int max_edges,
                                              bool two_edge_connected_only,
                                              int budget) {
  if (max_edges > budget)
    throw budget_error("enumerate_multigraphs: edge budget exceeded");
  std::vector<MultiGraph> out;
  std::set<std::string> seen;

  for (int n = 0; n <= max_edges; ++n) {
    int max_m = n + 1;
    for (int m = 1; m <= std::max(1, max_m); ++m) {
      if (n == 0 && m != 1) continue;
      if (n > 0 && m < 2) continue;
      int mindeg = (two_edge_connected_only && m >= 2) ? 2 : 1;
      if (n > 0 && 2 * n < m * mindeg) continue;
      if (two_edge_connected_only && m >= 2 && n < m) continue;

      std::vector<std::pair<int, int>> pairs;
      for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) pairs.push_back({u, v});

      MultiGraph g;
      g.vertex_count = m;
      std::vector<int> deg(m, 0);
      std::function<void(std::size_t, int)> gen = [&](std::size_t pi,
                                                      int left) {
        int deficiency = 0;
        for (int v = 0; v < m; ++v)
          if (m >= 2) deficiency += std::max(0, mindeg - deg[v]);
        if (deficiency > 2 * left) return;
        if (pi == pairs.size()) {
          if (left != 0) return;
          for (int v = 0; v < m; ++v)
            if (m >= 2 && deg[v] < mindeg) return;
          if (!is_connected(g)) return;
          if (two_edge_connected_only && !is_two_edge_connected(g)) return;
          if (seen.insert(certificate(g)).second) out.push_back(g);
          return;
        }
        auto [u, v] = pairs[pi];
        // Last pair touching u is (u, m-1): u's degree is then final.
        for (int mult = 0; mult <= left; ++mult) {
          if (mult > 0) {
            g.edges.push_back({u, v});
            deg[u]++;
            deg[v]++;
          }
          if (v < m - 1 || deg[u] >= mindeg) gen(pi + 1, left - mult);
        }
        for (int mult = left; mult > 0; --mult) {
          g.edges.pop_back();
          deg[u]--;
          deg[v]--;
        }
      };
      gen(0, n);
    }
  }
  return out;
}

}  // namespace latgraph
