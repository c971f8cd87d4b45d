#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gnpspec/degree_model.hpp"
#include "gnpspec/errors.hpp"
#include "gnpspec/graph.hpp"
#include "gnpspec/spectral.hpp"
#include "gnpspec/structure.hpp"

namespace gnpspec {

enum class BoundRule { MAX_DEGREE, FOREST, TRACE, BIPARTITE_PRODUCT, STAR, EXACT_SMALL };

inline const char* rule_name(BoundRule r) {
  switch (r) {
    case BoundRule::MAX_DEGREE: return "MAX_DEGREE";
    case BoundRule::FOREST: return "FOREST";
    case BoundRule::TRACE: return "TRACE";
    case BoundRule::BIPARTITE_PRODUCT: return "BIPARTITE_PRODUCT";
    case BoundRule::STAR: return "STAR";
    case BoundRule::EXACT_SMALL: return "EXACT_SMALL";
  }
  return "?";
}

struct BoundTerm {
  std::string subgraph_label;
  BoundRule rule = BoundRule::MAX_DEGREE;
  double value = 0.0;
  bool assumptions_held = true;  // did the proof's predicted structure verify
  bool fallback_used = false;    // the intended rule's precondition failed
  std::uint64_t edge_count = 0;
};

// Machine-checked decomposition of one concrete graph. Every term uses a
// bound that is valid for the actual subgraph, so upper_bound dominates
// lambda_1 whether or not the almost-sure structural events held.
struct Certificate {
  Regime regime;
  std::vector<BoundTerm> terms;
  std::string combination;
  double upper_bound = 0.0;
  double lower_bound = 0.0;  // max(sqrt(Delta), 2m/n), exact
  bool all_assumptions_held = true;
  Vertex n = 0;
  // Labeled edge partition (DENSE and MIDDLE paths), for auditing that the
  // subgraphs cover E(G) exactly.
  std::vector<std::pair<std::string, std::vector<Edge>>> parts;
};

// --- bound primitives (Prop-style spectral bounds) ---------------------------

inline double bound_max_degree(const Graph& g) {
  return static_cast<double>(max_degree(g));
}

// Proper 2-coloring check; returns one side of the bipartition if it exists.
inline std::optional<VertexSet> bipartition(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<std::int8_t> color(n, -1);
  VertexSet side(n);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    side.add(s);
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = static_cast<std::int8_t>(1 - color[v]);
          if (color[w] == 0) side.add(w);
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

// Trace bound: lambda_1^2 <= tr(A^2) = 2m always; for bipartite graphs the
// spectrum is symmetric, so 2*lambda_1^2 <= 2m and sqrt(m) suffices.
inline double bound_trace(const Graph& g) {
  const double m = static_cast<double>(g.num_edges());
  return bipartition(g) ? std::sqrt(m) : std::sqrt(2.0 * m);
}

// Forest bound min(2 sqrt(Delta-1), sqrt(n_g - 1)), where n_g counts only
// non-isolated vertices. The 2 sqrt(Delta-1) form is wrong for Delta <= 1
// (a single edge has lambda_1 = 1), so those cases return Delta exactly.
inline double bound_forest(const Graph& g) {
  if (!is_forest(g)) throw AssumptionError("bound_forest: graph has a cycle");
  const std::uint64_t d = max_degree(g);
  if (d <= 1) return static_cast<double>(d);
  std::uint64_t ng = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) > 0) ++ng;
  return std::min(2.0 * std::sqrt(static_cast<double>(d - 1)),
                  std::sqrt(static_cast<double>(ng - 1)));
}

inline double bound_bipartite(const Graph& g, const VertexSet& side_a) {
  std::uint64_t d1 = 0, d2 = 0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (g.degree(u) == 0) continue;
    if (side_a.contains(u)) d1 = std::max(d1, g.degree(u));
    else d2 = std::max(d2, g.degree(u));
    for (Vertex v : g.neighbors(u))
      if (side_a.contains(u) == side_a.contains(v))
        throw AssumptionError("bound_bipartite: edge does not cross the given side");
  }
  return std::sqrt(static_cast<double>(d1) * static_cast<double>(d2));
}

namespace detail {

// Unconditional fallback: the better of the max-degree and trace bounds.
inline BoundTerm fallback_term(const std::string& label, const Graph& sub) {
  BoundTerm t;
  t.subgraph_label = label;
  t.assumptions_held = false;
  t.fallback_used = true;
  t.edge_count = sub.num_edges();
  const double md = bound_max_degree(sub);
  const double tr = bound_trace(sub);
  if (md <= tr) {
    t.rule = BoundRule::MAX_DEGREE;
    t.value = md;
  } else {
    t.rule = BoundRule::TRACE;
    t.value = tr;
  }
  return t;
}

// FOREST when the subgraph verifies acyclic, otherwise fallback.
// `prediction_held` narrows assumptions_held further (e.g. a degree cap the
// proof expected) without affecting validity of the bound.
inline BoundTerm forest_or_fallback(const std::string& label, const Graph& sub,
                                    bool prediction_held = true) {
  if (is_forest(sub)) {
    BoundTerm t;
    t.subgraph_label = label;
    t.rule = BoundRule::FOREST;
    t.value = bound_forest(sub);
    t.assumptions_held = prediction_held;
    t.edge_count = sub.num_edges();
    return t;
  }
  return fallback_term(label, sub);
}

inline BoundTerm max_degree_term(const std::string& label, const Graph& sub,
                                 bool prediction_held) {
  BoundTerm t;
  t.subgraph_label = label;
  t.rule = BoundRule::MAX_DEGREE;
  t.value = bound_max_degree(sub);
  t.assumptions_held = prediction_held;
  t.edge_count = sub.num_edges();
  return t;
}

// True iff every component is a star (at most one vertex of degree >= 2).
inline bool is_disjoint_stars(const Graph& g) {
  if (!is_forest(g)) return false;
  const ComponentLabeling lab = components(g);
  std::vector<std::uint8_t> centers(lab.count, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) >= 2 && ++centers[lab.component_of[v]] > 1) return false;
  return true;
}

}  // namespace detail

// Executes the proof's regime-specific subgraph decomposition on a concrete
// graph and combines per-part bounds into an unconditional upper bound.
inline Certificate certify(const Graph& g, double p, const DeltaP& dp) {
  const Vertex n = g.num_vertices();
  Certificate cert;
  cert.n = n;
  cert.regime = classify_regime(n, p);  // throws for n < 20
  const std::uint64_t delta = max_degree(g);
  cert.lower_bound = std::max(std::sqrt(static_cast<double>(delta)),
                              2.0 * static_cast<double>(g.num_edges()) /
                                  static_cast<double>(n));

  const double lnln = std::log(std::log(static_cast<double>(n)));
  const double dpv = static_cast<double>(dp.value);
  const double x_threshold = static_cast<double>(n) * p * (1.0 + 1.0 / lnln) +
                             std::pow(dpv, 1.0 / 3.0);
  const double deg34 = std::pow(dpv, 0.75);
  const double deg78 = std::pow(dpv, 7.0 / 8.0);
  const double deg13 = std::pow(dpv, 1.0 / 3.0);

  if (cert.regime.tag == RegimeTag::VERY_SPARSE) {
    // Per-component bounds; vertex-disjoint parts combine by max.
    const ComponentLabeling lab = components(g);
    std::vector<std::uint64_t> start(lab.count + 1, 0);
    for (Vertex v = 0; v < n; ++v) ++start[lab.component_of[v] + 1];
    for (Vertex c = 0; c < lab.count; ++c) start[c + 1] += start[c];
    std::vector<Vertex> by_comp(n);
    {
      std::vector<std::uint64_t> cur(start.begin(), start.end() - 1);
      for (Vertex v = 0; v < n; ++v) by_comp[cur[lab.component_of[v]]++] = v;
    }
    double best = 0.0;
    bool any_trivial = false;
    for (Vertex c = 0; c < lab.count; ++c) {
      if (lab.vertex_count[c] <= 2) {
        // Exact small components: lambda_1 is 0 or 1.
        best = std::max(best, lab.edge_count[c] > 0 ? 1.0 : 0.0);
        any_trivial = true;
        continue;
      }
      VertexSet s(n);
      for (std::uint64_t i = start[c]; i < start[c + 1]; ++i) s.add(by_comp[i]);
      const Graph sub = induced(g, s).graph;
      BoundTerm t = detail::forest_or_fallback(
          "component:" + std::to_string(c), sub);
      best = std::max(best, t.value);
      cert.terms.push_back(std::move(t));
    }
    if (any_trivial) {
      // Components with <= 2 vertices, aggregated: lambda_1 is 1 if any of
      // them has an edge, else 0.
      bool any_edge_small = false;
      for (Vertex c = 0; c < lab.count; ++c)
        if (lab.vertex_count[c] <= 2 && lab.edge_count[c] > 0) any_edge_small = true;
      BoundTerm t;
      t.subgraph_label = "small-components";
      t.rule = BoundRule::EXACT_SMALL;
      t.value = any_edge_small ? 1.0 : 0.0;
      best = std::max(best, t.value);
      cert.terms.push_back(std::move(t));
    }
    cert.upper_bound = best;
    cert.combination = "max over vertex-disjoint components";
  } else if (cert.regime.tag == RegimeTag::DENSE) {
    const VertexSet x = high_degree_set(g, x_threshold);
    std::vector<Edge> e1, e2, e3;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : g.neighbors(u)) {
        if (u >= v) continue;
        const bool xu = x.contains(u), xv = x.contains(v);
        if (xu && xv) e1.emplace_back(u, v);
        else if (!xu && !xv) e2.emplace_back(u, v);
        else e3.emplace_back(u, v);
      }
    }
    const Graph g1 = Graph::from_canonical_edges(n, e1);
    const Graph g2 = Graph::from_canonical_edges(n, e2);
    const Graph g3 = Graph::from_canonical_edges(n, e3);
    cert.terms.push_back(detail::forest_or_fallback(
        "G1", g1, is_forest(g1) && bound_max_degree(g1) <= deg78));
    cert.terms.push_back(detail::max_degree_term(
        "G2", g2, bound_max_degree(g2) <= x_threshold));
    cert.terms.push_back(detail::forest_or_fallback("G3", g3));
    cert.upper_bound =
        cert.terms[0].value + cert.terms[1].value + cert.terms[2].value;
    cert.combination = "sum over edge partition: G1 + G2 + G3";
    cert.parts = {{"G1", std::move(e1)}, {"G2", std::move(e2)}, {"G3", std::move(e3)}};
  } else {
    // MIDDLE: six-way decomposition.
    VertexSet x1(n), x2(n), x(n);
    for (Vertex v = 0; v < n; ++v) {
      const double d = static_cast<double>(g.degree(v));
      if (d >= deg34) {
        x1.add(v);
        x.add(v);
      } else if (d > x_threshold) {
        x2.add(v);
        x.add(v);
      }
    }
    VertexSet y1(n);
    for (Vertex v = 0; v < n; ++v) {
      if (x.contains(v)) continue;
      for (Vertex w : g.neighbors(v)) {
        if (x1.contains(w)) {
          y1.add(v);
          break;
        }
      }
    }
    std::vector<Edge> e1, e2, e3, e4, e5, e6;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : g.neighbors(u)) {
        if (u >= v) continue;
        const bool xu = x.contains(u), xv = x.contains(v);
        if (xu && xv) {
          e1.emplace_back(u, v);
        } else if (xu || xv) {
          // one endpoint in X, one outside
          const Vertex inx = xu ? u : v;
          if (x2.contains(inx)) e2.emplace_back(u, v);
          else e6.emplace_back(u, v);  // X1 endpoint; other side is in Y1
        } else {
          const bool y1u = y1.contains(u), y1v = y1.contains(v);
          if (y1u && y1v) e3.emplace_back(u, v);
          else if (y1u || y1v) e4.emplace_back(u, v);
          else e5.emplace_back(u, v);
        }
      }
    }
    const Graph g1 = Graph::from_canonical_edges(n, e1);
    const Graph g2 = Graph::from_canonical_edges(n, e2);
    const Graph g3 = Graph::from_canonical_edges(n, e3);
    const Graph g4 = Graph::from_canonical_edges(n, e4);
    const Graph g5 = Graph::from_canonical_edges(n, e5);
    const Graph g6 = Graph::from_canonical_edges(n, e6);

    // T: Y1 vertices with degree greater than one in G6; H = X1-T edges.
    VertexSet t_set(n);
    for (Vertex v = 0; v < n; ++v)
      if (y1.contains(v) && g6.degree(v) > 1) t_set.add(v);
    std::vector<Edge> eh, es;
    for (const Edge& e : g6.edges()) {
      const Vertex y_end = y1.contains(e.first) ? e.first : e.second;
      (t_set.contains(y_end) ? eh : es).push_back(e);
    }
    const Graph h = Graph::from_canonical_edges(n, eh);
    const Graph g6s = Graph::from_canonical_edges(n, es);

    cert.terms.push_back(detail::forest_or_fallback(
        "G1", g1, is_forest(g1) && bound_max_degree(g1) <= deg78));
    cert.terms.push_back(detail::forest_or_fallback(
        "G2", g2, is_forest(g2) && bound_max_degree(g2) <= deg34));
    cert.terms.push_back(detail::max_degree_term(
        "G3", g3, bound_max_degree(g3) <= deg13));
    {
      // G4 is bipartite between Y1 and Y2 by construction.
      BoundTerm t;
      t.subgraph_label = "G4";
      t.rule = BoundRule::BIPARTITE_PRODUCT;
      t.value = bound_bipartite(g4, y1);
      std::uint64_t d_y2 = 0;
      for (Vertex v = 0; v < n; ++v)
        if (!y1.contains(v)) d_y2 = std::max(d_y2, g4.degree(v));
      t.assumptions_held = static_cast<double>(d_y2) <= deg13;
      t.edge_count = g4.num_edges();
      cert.terms.push_back(std::move(t));
    }
    cert.terms.push_back(detail::max_degree_term(
        "G5", g5, bound_max_degree(g5) <= x_threshold));
    cert.terms.push_back(detail::max_degree_term(
        "H", h, bound_max_degree(h) <= deg13));
    {
      BoundTerm t;
      t.subgraph_label = "G6-H";
      t.edge_count = g6s.num_edges();
      if (detail::is_disjoint_stars(g6s)) {
        // Vertex-disjoint stars: lambda_1 = sqrt(max star size), exactly.
        t.rule = BoundRule::STAR;
        t.value = std::sqrt(bound_max_degree(g6s));
        t.assumptions_held = true;
      } else {
        t = detail::fallback_term("G6-H", g6s);
      }
      cert.terms.push_back(std::move(t));
    }

    const double sum14 = cert.terms[0].value + cert.terms[1].value +
                         cert.terms[2].value + cert.terms[3].value;
    const double g6_bound = cert.terms[5].value + cert.terms[6].value;
    cert.upper_bound = sum14 + std::max(cert.terms[4].value, g6_bound);
    cert.combination =
        "G1 + G2 + G3 + G4 + max(G5, H + G6-H); G5 and G6 vertex-disjoint";
    cert.parts = {{"G1", std::move(e1)}, {"G2", std::move(e2)},
                  {"G3", std::move(e3)}, {"G4", std::move(e4)},
                  {"G5", std::move(e5)}, {"H", std::move(eh)},
                  {"G6-H", std::move(es)}};
  }

  if (!cert.parts.empty()) {
    std::uint64_t total = 0;
    for (const auto& [label, edges] : cert.parts) total += edges.size();
    if (total != g.num_edges())
      throw std::logic_error("certify: edge partition does not cover E(G)");
  }
  for (const auto& t : cert.terms)
    if (!t.assumptions_held) cert.all_assumptions_held = false;
  return cert;
}

// upper_bound / lambda_1 as a soundness ratio; >= 1 - 1e-6 always.
inline double certificate_gap(const Certificate& cert,
                              const SpectralResult& spectral) {
  if (cert.n != spectral.n)
    throw std::invalid_argument(
        "certificate_gap: certificate and spectral result disagree on n");
  if (cert.upper_bound == 0.0 && spectral.lambda1 <= 1e-12)
    return 1.0;  // edgeless graph: both sides are exactly zero
  return cert.upper_bound / std::max(spectral.lambda1, 1e-12);
}

}  // namespace gnpspec
