#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gnpspec/degree_model.hpp"
#include "gnpspec/errors.hpp"
#include "gnpspec/graph.hpp"

namespace gnpspec {

// Default budget of elementary neighbor-pair operations for the quadratic
// 2-neighborhood scans below.
inline constexpr std::uint64_t kDefaultWorkBudget = 1'000'000'000ULL;

struct StructureThresholds {
  double x_degree = 0.0;  // np(1 + 1/ln ln n) + DeltaP^{1/3}
  double deg34 = 0.0;     // DeltaP^{3/4}
  double deg78 = 0.0;     // DeltaP^{7/8}
  double deg13 = 0.0;     // DeltaP^{1/3}
};

struct StructureReport {
  bool forest = false;
  std::uint64_t max_component_size = 0;
  std::uint64_t short_cycle_violations = 0;  // vertices in >= 2 cycles of length <= 4
  std::uint64_t x_neighbor_max = 0;          // max #neighbors inside X
  std::uint64_t dist2_highdeg_max = 0;
  StructureThresholds thresholds;
};

// Vertices with degree strictly larger than the threshold.
inline VertexSet high_degree_set(const Graph& g, double threshold) {
  VertexSet s(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (static_cast<double>(g.degree(v)) > threshold) s.add(v);
  return s;
}

// Per-vertex count of distinct cycles of length 3 or 4 containing the
// vertex. Cost O(sum of squared degrees), guarded by the work budget.
inline std::vector<std::uint64_t> short_cycle_membership(
    const Graph& g, std::uint64_t budget = kDefaultWorkBudget) {
  const Vertex n = g.num_vertices();
  std::vector<std::uint64_t> counts(n, 0);
  std::uint64_t work = 0;
  auto charge = [&](std::uint64_t w) {
    work += w;
    if (work > budget)
      throw BudgetError("short_cycle_membership: work budget exceeded");
  };

  // Triangles: merge-intersect sorted neighbor lists over each edge (u,v),
  // keeping only w > v so every triangle is seen once.
  for (Vertex u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      charge(nu.size() + nv.size());
      std::size_t i = 0, j = 0;
      while (i < nu.size() && j < nv.size()) {
        if (nu[i] < nv[j]) ++i;
        else if (nu[i] > nv[j]) ++j;
        else {
          const Vertex w = nu[i];
          if (w > v) {
            ++counts[u];
            ++counts[v];
            ++counts[w];
          }
          ++i;
          ++j;
        }
      }
    }
  }

  // 4-cycles. For an unordered pair (u,v) with c common neighbors, there
  // are C(c,2) four-cycles with u,v as opposite corners. Charging C(c,2)
  // to the diagonal endpoints and (c-1) to each common neighbor counts
  // every member vertex exactly twice (once per diagonal of the cycle).
  std::vector<std::uint64_t> twice(n, 0);
  std::unordered_map<std::uint64_t, std::uint32_t> common;  // key u*n+v, u<v
  std::vector<std::uint32_t> cnt(n, 0);
  std::vector<Vertex> touched;
  for (Vertex u = 0; u < n; ++u) {
    touched.clear();
    for (Vertex w : g.neighbors(u)) {
      charge(g.neighbors(w).size());
      for (Vertex v : g.neighbors(w)) {
        if (v <= u) continue;
        if (cnt[v]++ == 0) touched.push_back(v);
      }
    }
    for (Vertex v : touched) {
      const std::uint32_t c = cnt[v];
      cnt[v] = 0;
      if (c >= 2) {
        const std::uint64_t pairs = static_cast<std::uint64_t>(c) * (c - 1) / 2;
        twice[u] += pairs;
        twice[v] += pairs;
        common.emplace(static_cast<std::uint64_t>(u) * n + v, c);
      }
    }
  }
  if (!common.empty()) {
    for (Vertex w = 0; w < n; ++w) {
      const auto nw = g.neighbors(w);
      charge(nw.size() * nw.size() / 2);
      for (std::size_t i = 0; i < nw.size(); ++i) {
        for (std::size_t j = i + 1; j < nw.size(); ++j) {
          const auto it =
              common.find(static_cast<std::uint64_t>(nw[i]) * n + nw[j]);
          if (it != common.end()) twice[w] += it->second - 1;
        }
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) counts[v] += twice[v] / 2;
  return counts;
}

// Per-vertex count of *other* vertices with degree >= deg_threshold within
// distance <= 2 (inclusive threshold).
inline std::vector<std::uint64_t> dist2_highdeg_counts(
    const Graph& g, double deg_threshold,
    std::uint64_t budget = kDefaultWorkBudget) {
  const Vertex n = g.num_vertices();
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<bool> high(n);
  for (Vertex v = 0; v < n; ++v)
    high[v] = static_cast<double>(g.degree(v)) >= deg_threshold;
  std::vector<Vertex> stamp(n, static_cast<Vertex>(-1));
  std::uint64_t work = 0;
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t c = 0;
    stamp[v] = v;
    for (Vertex w : g.neighbors(v)) {
      if (stamp[w] != v) {
        stamp[w] = v;
        if (high[w]) ++c;
      }
      work += g.neighbors(w).size();
      for (Vertex x : g.neighbors(w)) {
        if (stamp[x] != v) {
          stamp[x] = v;
          if (high[x]) ++c;
        }
      }
    }
    if (work > budget)
      throw BudgetError("dist2_highdeg_counts: work budget exceeded");
    counts[v] = c;
  }
  return counts;
}

// Evaluates the structural conclusions used by the certificate on one
// concrete graph, with thresholds derived from (n, p, DeltaP).
inline StructureReport structure_report(const Graph& g, const DeltaP& dp,
                                        std::uint64_t n, double p,
                                        std::uint64_t budget = kDefaultWorkBudget) {
  if (n < 20) throw std::domain_error("structure_report: requires n >= 20");
  StructureReport rep;
  const double lnln = std::log(std::log(static_cast<double>(n)));
  const double dpv = static_cast<double>(dp.value);
  rep.thresholds.x_degree =
      static_cast<double>(n) * p * (1.0 + 1.0 / lnln) + std::pow(dpv, 1.0 / 3.0);
  rep.thresholds.deg34 = std::pow(dpv, 0.75);
  rep.thresholds.deg78 = std::pow(dpv, 7.0 / 8.0);
  rep.thresholds.deg13 = std::pow(dpv, 1.0 / 3.0);

  const ComponentLabeling lab = components(g);
  rep.forest = g.num_edges() == g.num_vertices() - lab.count;
  for (Vertex c = 0; c < lab.count; ++c)
    rep.max_component_size =
        std::max<std::uint64_t>(rep.max_component_size, lab.vertex_count[c]);

  const auto cycles = short_cycle_membership(g, budget);
  for (auto c : cycles)
    if (c >= 2) ++rep.short_cycle_violations;

  const VertexSet x = high_degree_set(g, rep.thresholds.x_degree);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    std::uint64_t c = 0;
    for (Vertex w : g.neighbors(v))
      if (x.contains(w)) ++c;
    rep.x_neighbor_max = std::max(rep.x_neighbor_max, c);
  }

  const auto d2 = dist2_highdeg_counts(g, rep.thresholds.deg34, budget);
  for (auto c : d2) rep.dist2_highdeg_max = std::max(rep.dist2_highdeg_max, c);
  return rep;
}

}  // namespace gnpspec
