#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gnpspec/certificate.hpp"
#include "gnpspec/degree_model.hpp"
#include "gnpspec/graph.hpp"
#include "gnpspec/rng.hpp"
#include "gnpspec/spectral.hpp"
#include "gnpspec/structure.hpp"

namespace gnpspec {

// Edge-probability specification for one experiment grid.
struct PSpec {
  enum class Kind { ABS, C_OVER_N, LOGPOW } kind = Kind::ABS;
  double value = 0.0;  // ABS
  double c = 0.0;      // C_OVER_N: p = c/n
  double a = 0.0;      // LOGPOW: p = a * (ln n)^b / n
  double b = 0.0;

  double eval(std::uint64_t n) const {
    switch (kind) {
      case Kind::ABS: return value;
      case Kind::C_OVER_N: return c / static_cast<double>(n);
      case Kind::LOGPOW:
        return a * std::pow(std::log(static_cast<double>(n)), b) /
               static_cast<double>(n);
    }
    return 0.0;
  }
};

struct ExperimentConfig {
  std::vector<std::uint64_t> n_list;
  PSpec p_spec;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  double tol = 1e-8;
  std::string out_path;
  std::uint64_t max_iter = 100000;
  std::uint64_t workers = 0;  // 0: hardware concurrency

  void validate() const {
    if (trials < 1) throw std::domain_error("experiment config: trials must be >= 1");
    if (n_list.empty()) throw std::domain_error("experiment config: n_list is empty");
    if (!(tol > 0.0)) throw std::domain_error("experiment config: tol must be > 0");
    for (std::uint64_t n : n_list) {
      if (n < 20) throw std::domain_error("experiment config: every n must be >= 20");
      const double p = p_spec.eval(n);
      // p = 0 is tolerated (empty graphs, degenerate records); p >= 1 is not.
      if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("experiment config: p out of [0,1) at n=" +
                                std::to_string(n));
    }
  }
};

struct TrialRecord {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string generator_version;
  std::uint64_t m = 0;
  std::uint64_t delta = 0;
  std::optional<std::uint64_t> delta_p_value;
  double lambda1 = 0.0;
  double residual = 0.0;
  bool converged = true;
  double lower_bound = 0.0;
  std::optional<double> cert_upper;
  std::optional<std::string> regime;
  std::optional<double> ratio_theorem;
  std::optional<double> ratio_theorem_dp;  // vs max(sqrt(DeltaP), np)
  std::optional<double> ratio_corollary;
  bool forest = false;
  std::uint64_t max_component_size = 0;
  std::optional<std::uint64_t> short_cycle_violations;
  double wall_time_ms = 0.0;
};

struct GridSummary {
  std::uint64_t n = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::optional<double> median_ratio_theorem, mean_ratio_theorem,
      p05_ratio_theorem, p95_ratio_theorem;
  std::optional<double> median_ratio_corollary, mean_ratio_corollary,
      p05_ratio_corollary, p95_ratio_corollary;
  double fraction_forest = 0.0;
  std::optional<double> fraction_cycle_clean;
  double median_lambda1 = 0.0;
  std::optional<double> median_cert_gap;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // sorted by (grid index, trial)
  std::vector<GridSummary> summaries;
};

namespace detail {

inline double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

inline TrialRecord run_trial(std::uint64_t n, double p, std::uint64_t trial,
                             const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.n = n;
  rec.p = p;
  rec.trial = trial;
  rec.seed = mix_seed(cfg.base_seed, n, trial);
  rec.generator_version = kGeneratorVersion;

  const Graph g = gen_gnp(static_cast<Vertex>(n), p, rec.seed);
  rec.m = g.num_edges();
  rec.delta = max_degree(g);

  const SpectralResult spect = lambda1_power(g, cfg.tol, cfg.max_iter);
  rec.lambda1 = spect.lambda1;
  rec.residual = spect.residual;
  rec.converged = spect.converged;
  rec.lower_bound = std::max(std::sqrt(static_cast<double>(rec.delta)),
                             2.0 * static_cast<double>(rec.m) /
                                 static_cast<double>(n));

  if (p > 0.0) {
    const DeltaP dp = delta_p(n, p);
    rec.delta_p_value = dp.value;
    const Certificate cert = certify(g, p, dp);
    rec.cert_upper = cert.upper_bound;
    rec.regime = regime_name(cert.regime.tag);
    const double target_dp =
        std::max(std::sqrt(static_cast<double>(dp.value)),
                 static_cast<double>(n) * p);
    if (target_dp > 0.0) rec.ratio_theorem_dp = rec.lambda1 / target_dp;
  }
  const double target = theorem_target(n, p, rec.delta);
  if (target > 0.0) rec.ratio_theorem = rec.lambda1 / target;
  if (cfg.p_spec.kind == PSpec::Kind::C_OVER_N)
    rec.ratio_corollary = rec.lambda1 / corollary_target(n);

  const ComponentLabeling lab = components(g);
  rec.forest = rec.m == n - lab.count;
  for (Vertex c = 0; c < lab.count; ++c)
    rec.max_component_size =
        std::max<std::uint64_t>(rec.max_component_size, lab.vertex_count[c]);
  try {
    const auto cycles = short_cycle_membership(g);
    std::uint64_t viol = 0;
    for (auto c : cycles)
      if (c >= 2) ++viol;
    rec.short_cycle_violations = viol;
  } catch (const BudgetError&) {
    // too dense for the quadratic scan; field stays null
  }

  // In-process invariant checks. The exact lower bounds hold for the true
  // lambda_1; the computed estimate is certified only to within the
  // residual, which is added as allowance.
  const double slack = 1e-6 + rec.residual * std::max(1.0, rec.lambda1);
  if (rec.lambda1 + slack < std::sqrt(static_cast<double>(rec.delta)) ||
      rec.lambda1 + slack <
          2.0 * static_cast<double>(rec.m) / static_cast<double>(n) ||
      (rec.cert_upper && *rec.cert_upper + 1e-6 < rec.lambda1)) {
    throw std::logic_error(
        "trial invariant violated: n=" + std::to_string(n) +
        " p=" + std::to_string(p) + " seed=" + std::to_string(rec.seed) +
        " lambda1=" + std::to_string(rec.lambda1) +
        " delta=" + std::to_string(rec.delta) +
        " cert_upper=" + std::to_string(rec.cert_upper.value_or(-1.0)));
  }

  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rec;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Task {
    std::uint64_t n;
    double p;
    std::uint64_t trial;
  };
  std::vector<Task> tasks;
  for (std::uint64_t n : cfg.n_list) {
    const double p = cfg.p_spec.eval(n);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) tasks.push_back({n, p, t});
  }

  ExperimentResult out;
  out.records.resize(tasks.size());
  std::uint64_t workers = cfg.workers ? cfg.workers
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::uint64_t>(workers, tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        out.records[i] = detail::run_trial(tasks[i].n, tasks[i].p,
                                           tasks[i].trial, cfg);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(failure_mu);
        failure = e.what();
        failed.store(true);
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed) throw std::runtime_error("experiment aborted: " + failure);

  // Per-grid-point aggregates, in n_list order.
  std::size_t idx = 0;
  for (std::uint64_t n : cfg.n_list) {
    GridSummary s;
    s.n = n;
    s.p = cfg.p_spec.eval(n);
    s.trials = cfg.trials;
    std::vector<double> rt, rc, lam, gap;
    std::uint64_t forests = 0, clean = 0, clean_known = 0;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const TrialRecord& r = out.records[idx++];
      if (r.ratio_theorem) rt.push_back(*r.ratio_theorem);
      if (r.ratio_corollary) rc.push_back(*r.ratio_corollary);
      lam.push_back(r.lambda1);
      if (r.cert_upper)
        gap.push_back(*r.cert_upper / std::max(r.lambda1, 1e-12));
      if (r.forest) ++forests;
      if (r.short_cycle_violations.has_value()) {
        ++clean_known;
        if (*r.short_cycle_violations == 0) ++clean;
      }
    }
    if (!rt.empty()) {
      s.median_ratio_theorem = detail::quantile(rt, 0.5);
      s.mean_ratio_theorem =
          std::accumulate(rt.begin(), rt.end(), 0.0) / static_cast<double>(rt.size());
      s.p05_ratio_theorem = detail::quantile(rt, 0.05);
      s.p95_ratio_theorem = detail::quantile(rt, 0.95);
    }
    if (!rc.empty()) {
      s.median_ratio_corollary = detail::quantile(rc, 0.5);
      s.mean_ratio_corollary =
          std::accumulate(rc.begin(), rc.end(), 0.0) / static_cast<double>(rc.size());
      s.p05_ratio_corollary = detail::quantile(rc, 0.05);
      s.p95_ratio_corollary = detail::quantile(rc, 0.95);
    }
    s.fraction_forest =
        static_cast<double>(forests) / static_cast<double>(cfg.trials);
    if (clean_known)
      s.fraction_cycle_clean =
          static_cast<double>(clean) / static_cast<double>(clean_known);
    s.median_lambda1 = detail::quantile(lam, 0.5);
    if (!gap.empty()) s.median_cert_gap = detail::quantile(gap, 0.5);
    out.summaries.push_back(std::move(s));
  }
  return out;
}

// --- JSONL output -------------------------------------------------------------

inline nlohmann::json trial_to_json(const TrialRecord& r) {
  nlohmann::json j{{"type", "trial"},
                   {"n", r.n},
                   {"p", r.p},
                   {"trial", r.trial},
                   {"seed", r.seed},
                   {"generator_version", r.generator_version},
                   {"m", r.m},
                   {"delta", r.delta},
                   {"lambda1", r.lambda1},
                   {"residual", r.residual},
                   {"converged", r.converged},
                   {"lower_bound", r.lower_bound},
                   {"forest", r.forest},
                   {"max_component_size", r.max_component_size},
                   {"wall_time_ms", r.wall_time_ms}};
  j["delta_p"] = r.delta_p_value ? nlohmann::json(*r.delta_p_value) : nullptr;
  j["cert_upper"] = r.cert_upper ? nlohmann::json(*r.cert_upper) : nullptr;
  j["regime"] = r.regime ? nlohmann::json(*r.regime) : nullptr;
  j["ratio_theorem"] = r.ratio_theorem ? nlohmann::json(*r.ratio_theorem) : nullptr;
  j["ratio_theorem_dp"] =
      r.ratio_theorem_dp ? nlohmann::json(*r.ratio_theorem_dp) : nullptr;
  j["ratio_corollary"] =
      r.ratio_corollary ? nlohmann::json(*r.ratio_corollary) : nullptr;
  j["short_cycle_violations"] = r.short_cycle_violations
                                    ? nlohmann::json(*r.short_cycle_violations)
                                    : nullptr;
  return j;
}

inline nlohmann::json summary_to_json(const GridSummary& s) {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return nlohmann::json{{"type", "summary"},
                        {"n", s.n},
                        {"p", s.p},
                        {"trials", s.trials},
                        {"median_ratio_theorem", opt(s.median_ratio_theorem)},
                        {"mean_ratio_theorem", opt(s.mean_ratio_theorem)},
                        {"p05_ratio_theorem", opt(s.p05_ratio_theorem)},
                        {"p95_ratio_theorem", opt(s.p95_ratio_theorem)},
                        {"median_ratio_corollary", opt(s.median_ratio_corollary)},
                        {"mean_ratio_corollary", opt(s.mean_ratio_corollary)},
                        {"p05_ratio_corollary", opt(s.p05_ratio_corollary)},
                        {"p95_ratio_corollary", opt(s.p95_ratio_corollary)},
                        {"fraction_forest", s.fraction_forest},
                        {"fraction_cycle_clean", opt(s.fraction_cycle_clean)},
                        {"median_lambda1", s.median_lambda1},
                        {"median_cert_gap", opt(s.median_cert_gap)}};
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json ps;
  switch (cfg.p_spec.kind) {
    case PSpec::Kind::ABS:
      ps = {{"kind", "ABS"}, {"value", cfg.p_spec.value}};
      break;
    case PSpec::Kind::C_OVER_N:
      ps = {{"kind", "C_OVER_N"}, {"c", cfg.p_spec.c}};
      break;
    case PSpec::Kind::LOGPOW:
      ps = {{"kind", "LOGPOW"}, {"a", cfg.p_spec.a}, {"b", cfg.p_spec.b}};
      break;
  }
  return nlohmann::json{{"n_list", cfg.n_list}, {"p_spec", ps},
                        {"trials", cfg.trials}, {"base_seed", cfg.base_seed},
                        {"tol", cfg.tol},       {"out_path", cfg.out_path},
                        {"max_iter", cfg.max_iter}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
    const auto& ps = j.at("p_spec");
    const std::string kind = ps.at("kind").get<std::string>();
    if (kind == "ABS") {
      cfg.p_spec.kind = PSpec::Kind::ABS;
      cfg.p_spec.value = ps.at("value").get<double>();
    } else if (kind == "C_OVER_N") {
      cfg.p_spec.kind = PSpec::Kind::C_OVER_N;
      cfg.p_spec.c = ps.at("c").get<double>();
    } else if (kind == "LOGPOW") {
      cfg.p_spec.kind = PSpec::Kind::LOGPOW;
      cfg.p_spec.a = ps.at("a").get<double>();
      cfg.p_spec.b = ps.at("b").get<double>();
    } else {
      throw std::domain_error("experiment config: unknown p_spec kind '" + kind + "'");
    }
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("out_path")) cfg.out_path = j.at("out_path").get<std::string>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<std::uint64_t>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::domain_error(std::string("experiment config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

inline void write_jsonl(const ExperimentConfig& cfg, const ExperimentResult& res,
                        std::ostream& os) {
  nlohmann::json meta = config_to_json(cfg);
  meta["type"] = "meta";
  meta["generator_version"] = kGeneratorVersion;
  os << meta.dump() << "\n";
  for (const auto& r : res.records) os << trial_to_json(r).dump() << "\n";
  for (const auto& s : res.summaries) os << summary_to_json(s).dump() << "\n";
}

}  // namespace gnpspec
