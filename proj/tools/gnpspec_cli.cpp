// Command-line surface for the G(n,p) spectral toolkit.
//
// Exit codes: 0 success, 2 domain/config/usage errors, 3 solver
// non-convergence, 4 work-budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gnpspec/certificate.hpp"
#include "gnpspec/degree_model.hpp"
#include "gnpspec/experiment.hpp"
#include "gnpspec/graph.hpp"
#include "gnpspec/serialize.hpp"
#include "gnpspec/spectral.hpp"
#include "gnpspec/structure.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNonConverged = 3;
constexpr int kExitBudget = 4;

gnpspec::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open input file: " + path);
  return gnpspec::read_edge_list(in);
}

int cmd_gen(std::uint64_t n, double p, std::uint64_t seed,
            const std::string& out_path) {
  const gnpspec::Graph g =
      gnpspec::gen_gnp(static_cast<gnpspec::Vertex>(n), p, seed);
  std::ofstream out(out_path);
  if (!out) throw std::domain_error("cannot open output file: " + out_path);
  gnpspec::write_edge_list(g, out);
  return kExitOk;
}

int cmd_lambda1(const std::string& in_path, const std::string& method,
                double tol, std::uint64_t max_iter, bool as_json) {
  const gnpspec::Graph g = load_graph(in_path);
  gnpspec::SpectralResult r;
  if (method == "dense") {
    r = gnpspec::lambda1_dense(g);
  } else {
    r = gnpspec::lambda1_power(g, tol, max_iter);
  }
  if (as_json) {
    std::cout << gnpspec::to_json(r).dump() << "\n";
  } else {
    std::printf("%.12f\n", r.lambda1);
    if (!r.converged)
      std::fprintf(stderr, "warning: not converged (residual %.3e after %llu iterations)\n",
                   r.residual, static_cast<unsigned long long>(r.iterations));
  }
  return r.converged ? kExitOk : kExitNonConverged;
}

int cmd_deltap(std::uint64_t n, double p, bool as_json) {
  const gnpspec::DeltaP dp = gnpspec::delta_p(n, p);
  if (as_json) {
    std::cout << gnpspec::to_json(dp).dump() << "\n";
  } else {
    std::cout << dp.value << "\n";
  }
  return kExitOk;
}

int cmd_lemmas(const std::string& in_path, double p, bool as_json) {
  const gnpspec::Graph g = load_graph(in_path);
  const gnpspec::DeltaP dp = gnpspec::delta_p(g.num_vertices(), p);
  const gnpspec::StructureReport rep =
      gnpspec::structure_report(g, dp, g.num_vertices(), p);
  const auto j = gnpspec::to_json(rep);
  if (as_json) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_certify(const std::string& in_path, double p, bool as_json) {
  const gnpspec::Graph g = load_graph(in_path);
  const gnpspec::DeltaP dp = gnpspec::delta_p(g.num_vertices(), p);
  const gnpspec::Certificate cert = gnpspec::certify(g, p, dp);
  const gnpspec::SpectralResult spect = gnpspec::lambda1_power(g);
  auto j = gnpspec::to_json(cert);
  j["lambda1"] = spect.lambda1;
  j["gap"] = gnpspec::certificate_gap(cert, spect);
  std::cout << (as_json ? j.dump() : j.dump(2)) << "\n";
  if (cert.upper_bound + 1e-6 < spect.lambda1)
    throw std::logic_error("certificate soundness check failed");
  return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& csv_path) {
  std::ifstream in(config_path);
  if (!in) throw std::domain_error("cannot open config file: " + config_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::domain_error(std::string("config parse error: ") + e.what());
  }
  gnpspec::ExperimentConfig cfg = gnpspec::config_from_json(j);
  if (!out_path.empty()) cfg.out_path = out_path;
  if (cfg.out_path.empty())
    throw std::domain_error("experiment: no output path (config out_path or --out)");

  const gnpspec::ExperimentResult res = gnpspec::run_experiment(cfg);
  std::ofstream out(cfg.out_path);
  if (!out) throw std::domain_error("cannot open output file: " + cfg.out_path);
  gnpspec::write_jsonl(cfg, res, out);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::domain_error("cannot open csv file: " + csv_path);
    csv << "n,p,trial,seed,m,delta,delta_p,lambda1,residual,lower_bound,"
           "cert_upper,regime,ratio_theorem,ratio_corollary,forest,"
           "max_component_size,short_cycle_violations,wall_time_ms\n";
    for (const auto& r : res.records) {
      auto opt_u = [](const std::optional<std::uint64_t>& v) {
        return v ? std::to_string(*v) : std::string();
      };
      auto opt_d = [](const std::optional<double>& v) {
        if (!v) return std::string();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", *v);
        return std::string(buf);
      };
      char pbuf[32], lbuf[32], rbuf[32], lobuf[32], wbuf[32];
      std::snprintf(pbuf, sizeof pbuf, "%.12g", r.p);
      std::snprintf(lbuf, sizeof lbuf, "%.12g", r.lambda1);
      std::snprintf(rbuf, sizeof rbuf, "%.12g", r.residual);
      std::snprintf(lobuf, sizeof lobuf, "%.12g", r.lower_bound);
      std::snprintf(wbuf, sizeof wbuf, "%.3f", r.wall_time_ms);
      csv << r.n << ',' << pbuf << ',' << r.trial << ',' << r.seed << ','
          << r.m << ',' << r.delta << ',' << opt_u(r.delta_p_value) << ','
          << lbuf << ',' << rbuf << ',' << lobuf << ','
          << opt_d(r.cert_upper) << ',' << r.regime.value_or("") << ','
          << opt_d(r.ratio_theorem) << ',' << opt_d(r.ratio_corollary) << ','
          << (r.forest ? 1 : 0) << ',' << r.max_component_size << ','
          << opt_u(r.short_cycle_violations) << ',' << wbuf << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gnpspec: largest-eigenvalue toolkit for sparse G(n,p)"};
  app.require_subcommand(1);

  std::uint64_t n = 0, seed = 0, max_iter = 100000;
  double p = 0.0, tol = 1e-8;
  std::string in_path, out_path, config_path, csv_path, method = "power";
  bool as_json = false;

  auto* gen = app.add_subcommand("gen", "sample G(n,p) and write an edge list");
  gen->add_option("--n", n, "vertex count")->required();
  gen->add_option("--p", p, "edge probability")->required();
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--out", out_path, "output edge-list file")->required();

  auto* lam = app.add_subcommand("lambda1", "largest adjacency eigenvalue");
  lam->add_option("--in", in_path, "input edge-list file")->required();
  lam->add_option("--method", method, "power|dense")
      ->check(CLI::IsMember({"power", "dense"}));
  lam->add_option("--tol", tol, "residual tolerance");
  lam->add_option("--max-iter", max_iter, "iteration cap");
  lam->add_flag("--json", as_json, "single-line JSON output");

  auto* dpc = app.add_subcommand("deltap", "degree threshold Delta_p");
  dpc->add_option("--n", n, "vertex count")->required();
  dpc->add_option("--p", p, "edge probability")->required();
  dpc->add_flag("--json", as_json, "single-line JSON output");

  auto* lem = app.add_subcommand("lemmas", "structural lemma report");
  lem->add_option("--in", in_path, "input edge-list file")->required();
  lem->add_option("--p", p, "edge probability used for thresholds")->required();
  lem->add_flag("--json", as_json, "single-line JSON output");

  auto* cer = app.add_subcommand("certify", "spectral upper-bound certificate");
  cer->add_option("--in", in_path, "input edge-list file")->required();
  cer->add_option("--p", p, "edge probability used for thresholds")->required();
  cer->add_flag("--json", as_json, "single-line JSON output");

  auto* exp = app.add_subcommand("experiment", "seeded Monte-Carlo runner");
  exp->add_option("--config", config_path, "experiment config JSON")->required();
  exp->add_option("--out", out_path, "output JSONL file");
  exp->add_option("--csv", csv_path, "also export scalar fields as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDomain;
  }

  try {
    if (app.got_subcommand(gen)) return cmd_gen(n, p, seed, out_path);
    if (app.got_subcommand(lam))
      return cmd_lambda1(in_path, method, tol, max_iter, as_json);
    if (app.got_subcommand(dpc)) return cmd_deltap(n, p, as_json);
    if (app.got_subcommand(lem)) return cmd_lemmas(in_path, p, as_json);
    if (app.got_subcommand(cer)) return cmd_certify(in_path, p, as_json);
    if (app.got_subcommand(exp))
      return cmd_experiment(config_path, out_path, csv_path);
  } catch (const gnpspec::BudgetError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return kExitDomain;
}
