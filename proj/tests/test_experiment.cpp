#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "gnpspec/experiment.hpp"

using namespace gnpspec;

namespace {

// JSONL text with every wall_time_ms value normalized away, for
// determinism comparisons.
std::string scrub_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    j.erase("wall_time_ms");
    out += j.dump();
    out += "\n";
  }
  return out;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.n_list = {50, 100};
  cfg.p_spec.kind = PSpec::Kind::C_OVER_N;
  cfg.p_spec.c = 1.5;
  cfg.trials = 4;
  cfg.base_seed = 99;
  cfg.tol = 1e-8;
  return cfg;
}

}  // namespace

TEST_CASE("config round trip and parsing") {
  const auto cfg = small_config();
  const auto j = config_to_json(cfg);
  const auto back = config_from_json(j);
  REQUIRE(back.n_list == cfg.n_list);
  REQUIRE(back.p_spec.kind == PSpec::Kind::C_OVER_N);
  REQUIRE(back.p_spec.c == cfg.p_spec.c);
  REQUIRE(back.trials == cfg.trials);
  REQUIRE(back.base_seed == cfg.base_seed);
  REQUIRE(back.tol == cfg.tol);

  const auto logpow = nlohmann::json::parse(
      R"({"n_list":[100],"p_spec":{"kind":"LOGPOW","a":1.0,"b":1.0},"trials":2,"base_seed":1})");
  const auto lp = config_from_json(logpow);
  REQUIRE(lp.p_spec.eval(100) ==
          Catch::Approx(std::log(100.0) / 100.0));

  const auto abs0 = nlohmann::json::parse(
      R"({"n_list":[40],"p_spec":{"kind":"ABS","value":0.0},"trials":1,"base_seed":1})");
  REQUIRE_NOTHROW(config_from_json(abs0));
}

TEST_CASE("config validation errors") {
  auto cfg = small_config();
  cfg.trials = 0;
  REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = small_config();
  cfg.n_list.clear();
  REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = small_config();
  cfg.n_list = {19};
  REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = small_config();
  cfg.tol = 0.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);
  cfg = small_config();
  cfg.p_spec = {};
  cfg.p_spec.kind = PSpec::Kind::ABS;
  cfg.p_spec.value = 1.0;
  REQUIRE_THROWS_AS(cfg.validate(), std::domain_error);

  REQUIRE_THROWS_AS(
      config_from_json(nlohmann::json::parse(R"({"n_list":[100]})")),
      std::domain_error);
  REQUIRE_THROWS_AS(
      config_from_json(nlohmann::json::parse(
          R"({"n_list":[100],"p_spec":{"kind":"WAT"},"trials":1,"base_seed":0})")),
      std::domain_error);
}

TEST_CASE("per-trial seeds come from the mixing function") {
  const auto cfg = small_config();
  const auto res = run_experiment(cfg);
  REQUIRE(res.records.size() == cfg.n_list.size() * cfg.trials);
  std::size_t i = 0;
  for (std::uint64_t n : cfg.n_list) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const TrialRecord& r = res.records[i++];
      REQUIRE(r.n == n);
      REQUIRE(r.trial == t);
      REQUIRE(r.seed == mix_seed(cfg.base_seed, n, t));
      REQUIRE(r.generator_version == kGeneratorVersion);
    }
  }
  // distinct seeds across the whole grid
  for (std::size_t a = 0; a < res.records.size(); ++a)
    for (std::size_t b = a + 1; b < res.records.size(); ++b)
      REQUIRE(res.records[a].seed != res.records[b].seed);
}

TEST_CASE("trial records satisfy their invariants") {
  const auto cfg = small_config();
  const auto res = run_experiment(cfg);
  for (const TrialRecord& r : res.records) {
    const Graph g = gen_gnp(static_cast<Vertex>(r.n), r.p, r.seed);
    REQUIRE(g.num_edges() == r.m);
    REQUIRE(max_degree(g) == r.delta);
    REQUIRE(r.lower_bound ==
            Catch::Approx(std::max(std::sqrt(static_cast<double>(r.delta)),
                                   2.0 * static_cast<double>(r.m) /
                                       static_cast<double>(r.n))));
    REQUIRE(r.delta_p_value.has_value());
    REQUIRE(r.cert_upper.has_value());
    REQUIRE(*r.cert_upper + 1e-6 >= r.lambda1);
    REQUIRE(r.ratio_corollary.has_value());
    REQUIRE(*r.ratio_corollary ==
            Catch::Approx(r.lambda1 / corollary_target(r.n)));
    REQUIRE(r.regime.has_value());
    REQUIRE(r.short_cycle_violations.has_value());
    REQUIRE(r.wall_time_ms >= 0.0);
  }
  // summaries line up with the grid
  REQUIRE(res.summaries.size() == cfg.n_list.size());
  REQUIRE(res.summaries[0].n == 50);
  REQUIRE(res.summaries[1].n == 100);
  for (const GridSummary& s : res.summaries) {
    REQUIRE(s.trials == cfg.trials);
    REQUIRE(s.median_ratio_corollary.has_value());
    REQUIRE(s.median_lambda1 > 0.0);
    REQUIRE(s.fraction_forest >= 0.0);
    REQUIRE(s.fraction_forest <= 1.0);
  }
}

TEST_CASE("p = 0 grid degenerates cleanly") {
  ExperimentConfig cfg;
  cfg.n_list = {40};
  cfg.p_spec.kind = PSpec::Kind::ABS;
  cfg.p_spec.value = 0.0;
  cfg.trials = 2;
  cfg.base_seed = 5;
  const auto res = run_experiment(cfg);
  for (const TrialRecord& r : res.records) {
    REQUIRE(r.m == 0);
    REQUIRE(r.lambda1 == 0.0);
    REQUIRE(r.forest);
    REQUIRE_FALSE(r.delta_p_value.has_value());
    REQUIRE_FALSE(r.cert_upper.has_value());
    REQUIRE_FALSE(r.regime.has_value());
    REQUIRE_FALSE(r.ratio_theorem.has_value());  // target is 0
  }
  REQUIRE_FALSE(res.summaries[0].median_ratio_theorem.has_value());
  REQUIRE(res.summaries[0].fraction_forest == 1.0);
}

TEST_CASE("runs are deterministic modulo wall time") {
  auto cfg = small_config();
  std::string first, second;
  {
    const auto res = run_experiment(cfg);
    std::ostringstream os;
    write_jsonl(cfg, res, os);
    first = scrub_wall_time(os.str());
  }
  cfg.workers = 3;  // thread count must not affect the records
  {
    const auto res = run_experiment(cfg);
    std::ostringstream os;
    write_jsonl(cfg, res, os);
    second = scrub_wall_time(os.str());
  }
  REQUIRE_FALSE(first.empty());
  REQUIRE(first == second);

  // first line is the meta record
  const auto meta = nlohmann::json::parse(first.substr(0, first.find('\n')));
  REQUIRE(meta.at("type") == "meta");
  REQUIRE(meta.at("generator_version") == kGeneratorVersion);
}

TEST_CASE("changing the base seed changes the data") {
  auto cfg = small_config();
  const auto a = run_experiment(cfg);
  cfg.base_seed = 100;
  const auto b = run_experiment(cfg);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    if (a.records[i].m != b.records[i].m) any_diff = true;
  REQUIRE(any_diff);
}
