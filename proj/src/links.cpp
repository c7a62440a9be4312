#include "latgraph/links.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace latgraph {

namespace {

// Face structure and checkerboard coloring of a validated diagram.  The
// black graph may contain loops (nugatory crossings); edge i corresponds to
// crossing i.
struct Diagram {
  int black_count = 1;
  std::vector<std::pair<int, int>> edges;
};

int rot(int dart) { return (dart & ~3) | ((dart & 3) + 1) % 4; }

Diagram analyze(const PDCode& pd) {
  int n = pd.crossings();
  Diagram dia;
  if (n == 0) return dia;

  std::map<int, std::vector<int>> label_darts;
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) label_darts[pd.tuples[c][p]].push_back(4 * c + p);
  std::vector<int> partner(4 * n, -1);
  for (const auto& [label, darts] : label_darts) {
    if (darts.size() != 2)
      throw parse_error("pd: label " + std::to_string(label) +
                        " does not appear exactly twice");
    partner[darts[0]] = darts[1];
    partner[darts[1]] = darts[0];
    // Alternation: each arc has one under end (slot 0/2) and one over end.
    if ((darts[0] + darts[1]) % 2 == 0)
      throw parse_error("pd: diagram is not alternating");
  }

  // Connectivity of the diagram.
  {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int p = 0; p < 4; ++p) {
        int c2 = partner[4 * c + p] / 4;
        if (!seen[c2]) {
          seen[c2] = true;
          ++count;
          stack.push_back(c2);
        }
      }
    }
    if (count != n) throw parse_error("pd: split (disconnected) diagram");
  }

  // Faces: orbits of dart -> rotate(partner(dart)).
  std::vector<int> face(4 * n, -1);
  int faces = 0;
  for (int d = 0; d < 4 * n; ++d) {
    if (face[d] != -1) continue;
    int x = d;
    while (face[x] == -1) {
      face[x] = faces;
      x = rot(partner[x]);
    }
    ++faces;
  }
  if (faces != n + 2) throw parse_error("pd: diagram is not planar");

  // Checkerboard: black faces sit at the corners (0,1) and (2,3); the face
  // at corner (p, p+1) is the orbit of dart p+1.
  std::vector<int> color(faces, -1);  // 1 black, 0 white
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      int f = face[4 * c + (p + 1) % 4];
      int want = p % 2 == 0 ? 1 : 0;
      if (color[f] == -1)
        color[f] = want;
      else if (color[f] != want)
        throw parse_error("pd: inconsistent checkerboard coloring");
    }

  std::vector<int> black_id(faces, -1);
  int k = 0;
  for (int f = 0; f < faces; ++f)
    if (color[f] == 1) black_id[f] = k++;
  dia.black_count = k;
  for (int c = 0; c < n; ++c)
    dia.edges.push_back({black_id[face[4 * c + 1]], black_id[face[4 * c + 3]]});
  return dia;
}

}  // namespace

PDCode parse_pd(const std::string& text) {
  PDCode pd;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw parse_error("pd: empty input");
  if (tokens.size() == 1 && tokens[0] == "unknot") return pd;
  for (const std::string& tok : tokens) {
    std::array<int, 4> t;
    char x, open, c1, c2, c3, close;
    std::istringstream ts(tok);
    if (!(ts >> x >> open >> t[0] >> c1 >> t[1] >> c2 >> t[2] >> c3 >> t[3] >>
          close) ||
        x != 'X' || open != '(' || c1 != ',' || c2 != ',' || c3 != ',' ||
        close != ')' || ts.rdbuf()->in_avail() != 0)
      throw parse_error("pd: malformed token '" + tok + "'");
    for (int v : t)
      if (v < 1) throw parse_error("pd: labels must be positive");
    pd.tuples.push_back(t);
  }
  int n = pd.crossings();
  std::map<int, int> count;
  for (const auto& t : pd.tuples)
    for (int v : t) count[v]++;
  for (int label = 1; label <= 2 * n; ++label)
    if (count[label] != 2)
      throw parse_error("pd: label " + std::to_string(label) +
                        " does not appear exactly twice");
  if (static_cast<int>(count.size()) != 2 * n)
    throw parse_error("pd: labels are not 1..2n");
  return pd;
}

std::string format_pd(const PDCode& pd) {
  if (pd.crossings() == 0) return "unknot\n";
  std::ostringstream out;
  for (int c = 0; c < pd.crossings(); ++c) {
    const auto& t = pd.tuples[c];
    out << (c ? " " : "") << "X(" << t[0] << "," << t[1] << "," << t[2] << ","
        << t[3] << ")";
  }
  out << "\n";
  return out.str();
}

MultiGraph tait_graph(const PDCode& pd) {
  Diagram dia = analyze(pd);
  MultiGraph g;
  g.vertex_count = dia.black_count;
  for (auto [u, v] : dia.edges) {
    if (u == v) throw parse_error("pd: nugatory crossing (loop)");
    g.edges.push_back({u, v});
  }
  return g;
}

bool is_reduced(const PDCode& pd) {
  Diagram dia = analyze(pd);
  MultiGraph g;
  g.vertex_count = dia.black_count;
  for (auto [u, v] : dia.edges) {
    if (u == v) return false;
    g.edges.push_back({u, v});
  }
  return is_two_edge_connected(g);
}

namespace {

// Black graph with loops stripped and isolated vertices dropped; ids maps
// surviving edge ids back to crossing indices.
std::pair<MultiGraph, std::vector<int>> reduced_black_graph(const PDCode& pd,
                                                            bool reduce) {
  Diagram dia = analyze(pd);
  std::vector<std::pair<int, int>> kept;
  std::vector<int> ids;
  for (std::size_t c = 0; c < dia.edges.size(); ++c) {
    auto [u, v] = dia.edges[c];
    if (u == v) {
      if (!reduce)
        throw std::invalid_argument("diagram not reduced: nugatory crossing");
      continue;
    }
    kept.push_back({u, v});
    ids.push_back(static_cast<int>(c));
  }
  std::vector<int> newid(dia.black_count, -1);
  int m = 0;
  for (auto [u, v] : kept) {
    if (newid[u] == -1) newid[u] = m++;
    if (newid[v] == -1) newid[v] = m++;
  }
  MultiGraph g;
  g.vertex_count = std::max(m, 1);
  for (auto [u, v] : kept) g.edges.push_back({newid[u], newid[v]});
  if (!reduce && !is_two_edge_connected(g))
    throw std::invalid_argument("diagram not reduced: cut edge");
  return {g, ids};
}

}  // namespace

MutantVerdict mutation_equivalent(const PDCode& pd1, const PDCode& pd2,
                                  bool reduce) {
  auto [g1, ids1] = reduced_black_graph(pd1, reduce);
  auto [g2, ids2] = reduced_black_graph(pd2, reduce);
  MutantVerdict verdict;
  std::optional<EdgeBijection> f = reconstruct_two_isomorphism(g1, g2);
  if (!f) return verdict;
  verdict.equivalent = true;
  if (!reduce && pd1.crossings() != pd2.crossings())
    throw internal_error("mutants with different crossing numbers");
  EdgeBijection crossing_map;
  for (auto [a, b] : f->pairs) crossing_map.pairs.push_back({ids1[a], ids2[b]});
  verdict.crossing_map = crossing_map;
  return verdict;
}

int TwoBridgeSpec::crossing_number() const {
  return std::accumulate(bundle_sizes.begin(), bundle_sizes.end(), 0) +
         std::accumulate(path_lengths.begin(), path_lengths.end(), 0);
}

namespace {

void validate_spec(const TwoBridgeSpec& spec) {
  if (spec.k < 0 || static_cast<int>(spec.bundle_sizes.size()) != spec.k ||
      static_cast<int>(spec.path_lengths.size()) != spec.k + 1)
    throw std::invalid_argument("two-bridge spec: inconsistent sizes");
  for (int s : spec.bundle_sizes)
    if (s < 1) throw std::invalid_argument("two-bridge spec: empty bundle");
  for (int t : spec.path_lengths)
    if (t < 1) throw std::invalid_argument("two-bridge spec: empty path");
  if (std::accumulate(spec.path_lengths.begin(), spec.path_lengths.end(), 0) <
      2)
    throw std::invalid_argument("two-bridge spec: cycle shorter than 2");
}

std::vector<int> marked_positions(const TwoBridgeSpec& spec) {
  std::vector<int> pos;
  int acc = 0;
  for (int i = 0; i < spec.k; ++i) {
    acc += spec.path_lengths[i];
    pos.push_back(acc);
  }
  return pos;
}

}  // namespace

TwoBridgeSpec parse_two_bridge(const std::string& text) {
  std::istringstream in(text);
  std::string tag, ktok, etok, ftok;
  if (!(in >> tag >> ktok >> etok >> ftok) || tag != "tb" ||
      ktok.rfind("k=", 0) != 0 || etok.rfind("E=", 0) != 0 ||
      ftok.rfind("F=", 0) != 0)
    throw parse_error("two-bridge: expected 'tb k=<k> E=<list> F=<list>'");
  auto ints = [](const std::string& s) {
    std::vector<int> out;
    std::string item;
    std::istringstream ls(s);
    while (std::getline(ls, item, ',')) {
      try {
        out.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw parse_error("two-bridge: bad integer '" + item + "'");
      }
    }
    return out;
  };
  TwoBridgeSpec spec;
  try {
    spec.k = std::stoi(ktok.substr(2));
  } catch (const std::exception&) {
    throw parse_error("two-bridge: bad k");
  }
  spec.bundle_sizes = ints(etok.substr(2));
  spec.path_lengths = ints(ftok.substr(2));
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
  return spec;
}

std::string format_two_bridge(const TwoBridgeSpec& spec) {
  std::ostringstream out;
  out << "tb k=" << spec.k << " E=";
  for (std::size_t i = 0; i < spec.bundle_sizes.size(); ++i)
    out << (i ? "," : "") << spec.bundle_sizes[i];
  out << " F=";
  for (std::size_t i = 0; i < spec.path_lengths.size(); ++i)
    out << (i ? "," : "") << spec.path_lengths[i];
  return out.str();
}

TwoBridgeSpec reversed_spec(const TwoBridgeSpec& spec) {
  TwoBridgeSpec rev = spec;
  std::reverse(rev.bundle_sizes.begin(), rev.bundle_sizes.end());
  std::reverse(rev.path_lengths.begin(), rev.path_lengths.end());
  return rev;
}

MultiGraph two_bridge_graph(const TwoBridgeSpec& spec) {
  validate_spec(spec);
  int m = std::accumulate(spec.path_lengths.begin(), spec.path_lengths.end(),
                          0);
  MultiGraph g;
  g.vertex_count = m;
  for (int j = 0; j < m; ++j) g.edges.push_back({j, (j + 1) % m});
  std::vector<int> pos = marked_positions(spec);
  for (int i = 0; i < spec.k; ++i)
    for (int c = 0; c < spec.bundle_sizes[i]; ++c)
      g.edges.push_back({0, pos[i]});
  return g;
}

std::vector<std::vector<TwoBridgeSpec>> two_bridge_mutation_classes(
    int max_crossings) {
  if (max_crossings > 10)
    throw budget_error("two_bridge_mutation_classes: crossing budget is 10");
  std::vector<TwoBridgeSpec> specs;
  // All compositions with k bundles: k+1 path lengths and k bundle sizes,
  // every part >= 1, total <= max_crossings (and cycle length >= 2).
  std::function<void(TwoBridgeSpec&, int, int)> extend =
      [&](TwoBridgeSpec& spec, int parts_left, int budget) {
        if (parts_left == 0) {
          TwoBridgeSpec s = spec;
          if (std::accumulate(s.path_lengths.begin(), s.path_lengths.end(),
                              0) >= 2)
            specs.push_back(s);
          return;
        }
        bool is_path =
            static_cast<int>(spec.path_lengths.size()) < spec.k + 1;
        auto& slot = is_path ? spec.path_lengths : spec.bundle_sizes;
        for (int v = 1; v + (parts_left - 1) <= budget; ++v) {
          slot.push_back(v);
          extend(spec, parts_left - 1, budget - v);
          slot.pop_back();
        }
      };
  for (int k = 0; 2 * k + 1 <= max_crossings; ++k) {
    TwoBridgeSpec spec;
    spec.k = k;
    extend(spec, 2 * k + 1, max_crossings);
  }

  std::vector<DInvariant> ds;
  for (const TwoBridgeSpec& s : specs)
    ds.push_back(flow_d_invariant(two_bridge_graph(s)));

  // Union-find over d-equivalence.
  std::vector<int> parent(specs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j)
      if (find_torsor_iso(ds[i], ds[j], +1)) parent[find(j)] = find(i);

  std::map<int, std::vector<TwoBridgeSpec>> grouped;
  for (std::size_t i = 0; i < specs.size(); ++i)
    grouped[find(static_cast<int>(i))].push_back(specs[i]);
  std::vector<std::vector<TwoBridgeSpec>> classes;
  for (auto& [root, members] : grouped) {
    // Prop. "2bridge": a class is a spec together with its reversal.
    for (const TwoBridgeSpec& s : members) {
      TwoBridgeSpec rev = reversed_spec(s);
      bool ok = members.size() <= 2;
      if (ok && members.size() == 2)
        ok = (members[0] == s && members[1] == rev) ||
             (members[0] == rev && members[1] == s);
      if (ok && members.size() == 1) ok = rev == s;
      if (!ok)
        throw internal_error(
            "two_bridge_mutation_classes: class is not {spec, reversal}");
    }
    classes.push_back(members);
  }
  return classes;
}

DInvariant branched_cover_d_invariants(const PDCode& pd) {
  if (!is_reduced(pd))
    throw std::invalid_argument("branched_cover: diagram not reduced");
  DInvariant d = flow_d_invariant(tait_graph(pd));
  for (auto& [cls, v] : d.values) v = -v;
  return d;
}

PDCode pd_from_plane_graph(const MultiGraph& g,
                           const std::vector<std::vector<int>>& rotation) {
  int n = g.edge_count();
  if (static_cast<int>(rotation.size()) != g.vertex_count)
    throw std::invalid_argument("pd_from_plane_graph: rotation size mismatch");
  // Position of each edge in each endpoint's rotation.
  std::vector<std::array<int, 2>> pos(n, {-1, -1});
  std::vector<int> arc_offset(g.vertex_count, 0);
  int arcs = 0;
  for (int v = 0; v < g.vertex_count; ++v) {
    arc_offset[v] = arcs;
    arcs += static_cast<int>(rotation[v].size());
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      int e = rotation[v][i];
      if (e < 0 || e >= n)
        throw std::invalid_argument("pd_from_plane_graph: bad edge id");
      int side = g.edges[e].first == v ? 0 : g.edges[e].second == v ? 1 : -1;
      if (side == -1 || pos[e][side] != -1)
        throw std::invalid_argument("pd_from_plane_graph: bad rotation");
      pos[e][side] = static_cast<int>(i);
    }
  }
  if (arcs != 2 * n)
    throw std::invalid_argument("pd_from_plane_graph: rotation incomplete");
  for (const auto& p : pos)
    if (p[0] == -1 || p[1] == -1)
      throw std::invalid_argument("pd_from_plane_graph: rotation incomplete");

  // Arc (v, i) runs from edge rotation[v][i] to rotation[v][i+1] around v.
  // At a crossing drawn with the first endpoint u below, counterclockwise
  // slots are (SW, SE, NE, NW) = (arc(u,i), arc(u,i-1), arc(v,j), arc(v,j-1)),
  // making the u-to-v strand pass under and the black corners face u and v.
  auto arc = [&](int v, int i) {
    int deg = static_cast<int>(rotation[v].size());
    return arc_offset[v] + (i % deg + deg) % deg + 1;
  };
  PDCode pd;
  for (int e = 0; e < n; ++e) {
    auto [u, v] = g.edges[e];
    int i = pos[e][0], j = pos[e][1];
    pd.tuples.push_back(
        {arc(u, i), arc(u, i - 1), arc(v, j), arc(v, j - 1)});
  }
  return pd;
}

PDCode two_bridge_pd(const TwoBridgeSpec& spec) {
  MultiGraph g = two_bridge_graph(spec);
  int m = std::accumulate(spec.path_lengths.begin(), spec.path_lengths.end(),
                          0);
  std::vector<int> pos = marked_positions(spec);
  std::vector<std::vector<int>> bundle_edges(m);
  int next_edge = m;
  for (int i = 0; i < spec.k; ++i)
    for (int c = 0; c < spec.bundle_sizes[i]; ++c)
      bundle_edges[pos[i]].push_back(next_edge++);

  std::vector<std::vector<int>> rotation(m);
  // Vertex 0: circle edge toward vertex 1, chords sweeping inward by
  // ascending marked position, then the circle edge from m-1.
  rotation[0].push_back(0);
  for (int i = 0; i < spec.k; ++i)
    for (int e : bundle_edges[pos[i]]) rotation[0].push_back(e);
  rotation[0].push_back(m - 1);
  // Other vertices: circle edge onward, chords in reverse, circle edge back.
  for (int w = 1; w < m; ++w) {
    rotation[w].push_back(w);
    for (auto it = bundle_edges[w].rbegin(); it != bundle_edges[w].rend(); ++it)
      rotation[w].push_back(*it);
    rotation[w].push_back(w - 1);
  }
  return pd_from_plane_graph(g, rotation);
}

}  // namespace latgraph
