#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "gnpspec/graph.hpp"

namespace gnpspec {

enum class SolverMethod { POWER, DENSE };

struct SpectralResult {
  double lambda1 = 0.0;
  SolverMethod method = SolverMethod::POWER;
  double residual = 0.0;  // ||A v - lambda v|| / max(1, lambda) of the winner
  std::uint64_t iterations = 0;
  Vertex argmax_component = 0;
  std::vector<double> per_component;
  bool converged = true;
  Vertex n = 0;  // vertex count of the graph this was computed on
};

namespace detail {

// Shifted power iteration on one connected component, given in local CSR
// form. The +1 shift makes the top eigenvalue of A+I strictly dominant even
// on bipartite components (where A alone has the +-lambda pair).
struct ComponentSolve {
  double lambda = 0.0;
  double residual = 0.0;
  std::uint64_t iterations = 0;
  bool converged = false;
};

inline ComponentSolve power_component(const std::vector<std::uint64_t>& offsets,
                                      const std::vector<Vertex>& adj,
                                      double tol, std::uint64_t max_iter) {
  const std::size_t nc = offsets.size() - 1;
  std::vector<double> v(nc), z(nc);
  // Start from the degree vector: nonnegative, so it overlaps the
  // per-component Perron vector. No RNG in the solver.
  double norm = 0.0;
  for (std::size_t i = 0; i < nc; ++i) {
    v[i] = static_cast<double>(offsets[i + 1] - offsets[i]);
    norm += v[i] * v[i];
  }
  if (norm == 0.0) {
    for (std::size_t i = 0; i < nc; ++i) v[i] = 1.0;
    norm = static_cast<double>(nc);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;

  ComponentSolve out;
  for (std::uint64_t it = 1; it <= max_iter; ++it) {
    // z = A v
    for (std::size_t i = 0; i < nc; ++i) {
      double acc = 0.0;
      for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e)
        acc += v[adj[e]];
      z[i] = acc;
    }
    double lambda = 0.0;
    for (std::size_t i = 0; i < nc; ++i) lambda += v[i] * z[i];
    double rnorm2 = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
      const double r = z[i] - lambda * v[i];
      rnorm2 += r * r;
    }
    out.lambda = lambda;
    out.residual = std::sqrt(rnorm2) / std::max(1.0, lambda);
    out.iterations = it;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    // next iterate: (A + I) v, normalized
    double znorm2 = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
      z[i] += v[i];
      znorm2 += z[i] * z[i];
    }
    const double zn = std::sqrt(znorm2);
    for (std::size_t i = 0; i < nc; ++i) v[i] = z[i] / zn;
  }
  return out;
}

}  // namespace detail

inline SpectralResult lambda1_power(const Graph& g, double tol = 1e-8,
                                    std::uint64_t max_iter = 100000) {
  if (!(tol > 0.0)) throw std::domain_error("lambda1_power: tol must be > 0");
  if (max_iter < 1) throw std::domain_error("lambda1_power: max_iter must be >= 1");
  const ComponentLabeling lab = components(g);
  SpectralResult res;
  res.method = SolverMethod::POWER;
  res.n = g.num_vertices();
  res.per_component.assign(lab.count, 0.0);

  // Group vertices by component (counting sort keeps vertex order stable).
  std::vector<std::uint64_t> start(lab.count + 1, 0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) ++start[lab.component_of[v] + 1];
  for (Vertex c = 0; c < lab.count; ++c) start[c + 1] += start[c];
  std::vector<Vertex> by_comp(g.num_vertices());
  {
    std::vector<std::uint64_t> cur(start.begin(), start.end() - 1);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      by_comp[cur[lab.component_of[v]]++] = v;
  }
  std::vector<Vertex> local_id(g.num_vertices());

  double best = 0.0;
  Vertex best_comp = 0;
  double best_residual = 0.0;
  for (Vertex c = 0; c < lab.count; ++c) {
    const std::span<const Vertex> verts(by_comp.data() + start[c],
                                        by_comp.data() + start[c + 1]);
    double lam = 0.0;
    double residual = 0.0;
    if (lab.edge_count[c] == 0) {
      lam = 0.0;  // edgeless component, no iteration needed
    } else if (verts.size() == 2) {
      lam = 1.0;  // single edge
    } else {
      for (Vertex i = 0; i < verts.size(); ++i) local_id[verts[i]] = i;
      std::vector<std::uint64_t> offsets(verts.size() + 1, 0);
      for (Vertex i = 0; i < verts.size(); ++i)
        offsets[i + 1] = offsets[i] + g.degree(verts[i]);
      std::vector<Vertex> adj(offsets.back());
      std::uint64_t e = 0;
      for (Vertex u : verts)
        for (Vertex w : g.neighbors(u)) adj[e++] = local_id[w];
      const auto solve = detail::power_component(offsets, adj, tol, max_iter);
      lam = solve.lambda;
      residual = solve.residual;
      res.iterations += solve.iterations;
      if (!solve.converged) res.converged = false;
    }
    res.per_component[c] = lam;
    if (lam > best) {
      best = lam;
      best_comp = c;
      best_residual = residual;
    }
  }
  res.lambda1 = best;
  res.argmax_component = best_comp;
  res.residual = best_residual;
  return res;
}

// Dense oracle: cyclic Jacobi rotations on the full adjacency matrix.
// Deterministic; intended for cross-checking the power solver at small n.
inline SpectralResult lambda1_dense(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n > 1024) throw std::length_error("lambda1_dense: n must be <= 1024");
  SpectralResult res;
  res.method = SolverMethod::DENSE;
  res.n = g.num_vertices();
  if (n == 0) return res;

  std::vector<double> a(n * n, 0.0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u)) a[u * n + v] = 1.0;

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
    return s;
  };

  const double eps = 1e-24 * std::max<double>(1.0, static_cast<double>(g.num_edges()));
  for (std::uint64_t sweep = 0; sweep < 100; ++sweep) {
    if (off_norm2() <= eps) break;
    res.iterations = sweep + 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p], aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  double best = a[0];
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, a[i * n + i]);
  res.lambda1 = std::max(0.0, best);
  res.converged = true;
  res.residual = std::sqrt(off_norm2());
  return res;
}

// v'Av / v'v: a cheap lower-bound probe for lambda_1.
inline double rayleigh(const Graph& g, const std::vector<double>& v) {
  if (v.size() != g.num_vertices())
    throw std::domain_error("rayleigh: vector length must equal vertex count");
  double vv = 0.0, vav = 0.0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    vv += v[u] * v[u];
    double acc = 0.0;
    for (Vertex w : g.neighbors(u)) acc += v[w];
    vav += v[u] * acc;
  }
  if (vv == 0.0) throw std::domain_error("rayleigh: zero vector");
  return vav / vv;
}

}  // namespace gnpspec
