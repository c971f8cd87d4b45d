#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gnpspec/errors.hpp"
#include "gnpspec/rng.hpp"

namespace gnpspec {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // canonical: first < second

// Immutable sparse undirected simple graph in CSR form. Neighbor lists are
// sorted ascending, symmetric, with no self-loops or duplicates. Safe to
// share across threads; every operation below is a pure function.
class Graph {
 public:
  Graph() : n_(0), offsets_(1, 0) {}

  // Trusted builder: edges must already be canonical (u < v), sorted
  // lexicographically, unique, with endpoints < n.
  static Graph from_canonical_edges(Vertex n, const std::vector<Edge>& edges) {
    Graph g;
    g.n_ = n;
    std::vector<std::uint64_t> deg(n + 1, 0);
    for (const auto& [u, v] : edges) {
      ++deg[u + 1];
      ++deg[v + 1];
    }
    g.offsets_.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v + 1];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      g.adj_[cursor[u]++] = v;
      g.adj_[cursor[v]++] = u;
    }
    // Lexicographic edge order makes each list sorted already, except the
    // "lower endpoint" entries interleave; one sort pass keeps it canonical.
    for (Vertex v = 0; v < n; ++v)
      std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
    return g;
  }

  Vertex num_vertices() const { return n_; }
  std::uint64_t num_edges() const { return adj_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v],
            adj_.data() + offsets_[v + 1]};
  }

  std::uint64_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  Vertex n_;
  std::vector<std::uint64_t> offsets_;  // n+1 entries
  std::vector<Vertex> adj_;             // 2m entries
};

// Dense membership set over 0..n-1.
class VertexSet {
 public:
  explicit VertexSet(Vertex n) : n_(n), words_((n + 63) / 64, 0), count_(0) {}

  Vertex universe_size() const { return n_; }
  Vertex cardinality() const { return count_; }

  bool contains(Vertex v) const {
    return (words_[v >> 6] >> (v & 63)) & 1;
  }

  void add(Vertex v) {
    std::uint64_t& w = words_[v >> 6];
    std::uint64_t bit = 1ULL << (v & 63);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }

  VertexSet complement() const {
    VertexSet out(n_);
    for (Vertex v = 0; v < n_; ++v)
      if (!contains(v)) out.add(v);
    return out;
  }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(count_);
    for (Vertex v = 0; v < n_; ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }

 private:
  Vertex n_;
  std::vector<std::uint64_t> words_;
  Vertex count_;
};

// Connectivity classes. Component ids are dense in 0..count-1, assigned in
// order of the smallest vertex of each component.
struct ComponentLabeling {
  std::vector<Vertex> component_of;        // per vertex
  Vertex count = 0;
  std::vector<Vertex> vertex_count;        // per component
  std::vector<std::uint64_t> edge_count;   // per component
};

inline ComponentLabeling components(const Graph& g) {
  const Vertex n = g.num_vertices();
  ComponentLabeling lab;
  lab.component_of.assign(n, static_cast<Vertex>(-1));
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (lab.component_of[s] != static_cast<Vertex>(-1)) continue;
    const Vertex id = lab.count++;
    lab.vertex_count.push_back(0);
    lab.edge_count.push_back(0);
    stack.push_back(s);
    lab.component_of[s] = id;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      ++lab.vertex_count[id];
      lab.edge_count[id] += g.degree(v);
      for (Vertex w : g.neighbors(v)) {
        if (lab.component_of[w] == static_cast<Vertex>(-1)) {
          lab.component_of[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  for (auto& e : lab.edge_count) e /= 2;
  return lab;
}

inline bool is_forest(const Graph& g) {
  ComponentLabeling lab = components(g);
  return g.num_edges() == g.num_vertices() - lab.count;
}

// --- G(n,p) sampling -------------------------------------------------------

// Seeded Erdos-Renyi sample. Walks the linearized pair index 0..C(n,2)-1
// with geometric skips (waiting-time method), so cost is O(m + n) rather
// than O(n^2). The naive per-pair sampler kept in the tests serves as the
// distributional oracle.
inline Graph gen_gnp(Vertex n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("gen_gnp: p must lie in [0,1]");
  std::vector<Edge> edges;
  const std::uint64_t total =
      static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (p == 1.0) {
    edges.reserve(total);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return Graph::from_canonical_edges(n, edges);
  }
  if (p > 0.0 && total > 0) {
    SplitMix64 rng(seed);
    const double log1mp = std::log1p(-p);
    edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.1) + 16);
    std::uint64_t idx = 0;  // next candidate pair index
    Vertex u = 0;
    std::uint64_t row_start = 0;  // linear index of pair (u, u+1)
    while (true) {
      // Geometric number of skipped pairs before the next present edge.
      const double skip_f = std::floor(std::log(rng.next_unit_open()) / log1mp);
      if (skip_f >= static_cast<double>(total - idx)) break;
      const std::uint64_t skip = static_cast<std::uint64_t>(skip_f);
      if (skip >= total - idx) break;
      idx += skip;
      // Advance the row pointer; skips are short on average so the linear
      // walk over rows is O(n) total across the whole generation.
      while (row_start + (n - 1 - u) <= idx) {
        row_start += n - 1 - u;
        ++u;
      }
      const Vertex v = static_cast<Vertex>(u + 1 + (idx - row_start));
      edges.emplace_back(u, v);
      if (++idx >= total) break;
    }
  }
  return Graph::from_canonical_edges(n, edges);
}

// Validating constructor from an arbitrary edge list.
inline Graph from_edges(Vertex n, const std::vector<Edge>& raw) {
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [u, v] = raw[i];
    if (u >= n || v >= n)
      throw FormatError("edge " + std::to_string(i) + ": endpoint out of range (" +
                        std::to_string(u) + "," + std::to_string(v) + ")");
    if (u == v)
      throw FormatError("edge " + std::to_string(i) + ": self-loop at vertex " +
                        std::to_string(u));
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw FormatError("duplicate edge (" + std::to_string(dup->first) + "," +
                      std::to_string(dup->second) + ")");
  return Graph::from_canonical_edges(n, edges);
}

// --- subgraph operations ----------------------------------------------------

struct InducedSubgraph {
  Graph graph;                      // vertices relabeled 0..|s|-1
  std::vector<Vertex> vertex_map;   // new id -> original id
};

// Subgraph induced by s, with vertices compacted to 0..|s|-1.
inline InducedSubgraph induced(const Graph& g, const VertexSet& s) {
  InducedSubgraph out;
  out.vertex_map = s.members();
  std::vector<Vertex> new_id(g.num_vertices(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < out.vertex_map.size(); ++i)
    new_id[out.vertex_map[i]] = i;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < out.vertex_map.size(); ++i) {
    const Vertex u = out.vertex_map[i];
    for (Vertex v : g.neighbors(u))
      if (u < v && s.contains(v)) edges.emplace_back(i, new_id[v]);
  }
  std::sort(edges.begin(), edges.end());
  out.graph = Graph::from_canonical_edges(
      static_cast<Vertex>(out.vertex_map.size()), edges);
  return out;
}

// Bipartite subgraph of edges with exactly one endpoint in s. Keeps the
// original vertex ids (same vertex count as g).
inline Graph cut(const Graph& g, const VertexSet& s) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v && s.contains(u) != s.contains(v)) edges.emplace_back(u, v);
  return Graph::from_canonical_edges(g.num_vertices(), edges);
}

inline std::vector<std::uint64_t> degrees(const Graph& g) {
  std::vector<std::uint64_t> d(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) d[v] = g.degree(v);
  return d;
}

inline std::uint64_t max_degree(const Graph& g) {
  std::uint64_t best = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    best = std::max(best, g.degree(v));
  return best;
}

// --- edge-list text format ---------------------------------------------------
//
//   gnp-graph 1 <n> <m>
//   <u> <v>        (m lines, u < v, sorted lexicographically, LF endings)

inline void write_edge_list(const Graph& g, std::ostream& os) {
  os << "gnp-graph 1 " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (Vertex u = 0; u < g.num_vertices(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) os << u << " " << v << "\n";
}

inline Graph read_edge_list(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty input");
  std::istringstream header(line);
  std::string magic;
  int version = 0;
  std::uint64_t n = 0, m = 0;
  if (!(header >> magic >> version >> n >> m) || magic != "gnp-graph" ||
      version != 1)
    throw FormatError("line 1: expected 'gnp-graph 1 <n> <m>'");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!std::getline(is, line))
      throw FormatError("line " + std::to_string(i + 2) + ": unexpected end of input");
    std::istringstream ls(line);
    std::uint64_t u = 0, v = 0;
    if (!(ls >> u >> v))
      throw FormatError("line " + std::to_string(i + 2) + ": expected '<u> <v>'");
    if (u >= v)
      throw FormatError("line " + std::to_string(i + 2) + ": requires u < v");
    if (v >= n)
      throw FormatError("line " + std::to_string(i + 2) + ": endpoint out of range");
    if (!edges.empty() && edges.back() >= Edge{u, v})
      throw FormatError("line " + std::to_string(i + 2) + ": edges not sorted/unique");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_canonical_edges(static_cast<Vertex>(n), edges);
}

}  // namespace gnpspec
