#pragma once

#include <json.hpp>

#include "gnpspec/certificate.hpp"
#include "gnpspec/degree_model.hpp"
#include "gnpspec/spectral.hpp"
#include "gnpspec/structure.hpp"

namespace gnpspec {

using json = nlohmann::json;

inline json to_json(const DeltaP& dp) {
  return json{{"value", dp.value},
              {"crossing_k", dp.crossing_k},
              {"knife_edge", dp.knife_edge},
              {"log_profile", dp.log_profile}};
}

inline json to_json(const SpectralResult& r) {
  return json{{"lambda1", r.lambda1},
              {"method", r.method == SolverMethod::POWER ? "power" : "dense"},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"argmax_component", r.argmax_component},
              {"converged", r.converged},
              {"per_component", r.per_component}};
}

inline json to_json(const StructureReport& rep) {
  return json{{"forest", rep.forest},
              {"max_component_size", rep.max_component_size},
              {"short_cycle_violations", rep.short_cycle_violations},
              {"x_neighbor_max", rep.x_neighbor_max},
              {"dist2_highdeg_max", rep.dist2_highdeg_max},
              {"thresholds",
               json{{"x_degree", rep.thresholds.x_degree},
                    {"deg34", rep.thresholds.deg34},
                    {"deg78", rep.thresholds.deg78},
                    {"deg13", rep.thresholds.deg13}}}};
}

inline json to_json(const Certificate& cert) {
  json terms = json::array();
  for (const auto& t : cert.terms)
    terms.push_back(json{{"label", t.subgraph_label},
                         {"rule", rule_name(t.rule)},
                         {"value", t.value},
                         {"assumptions_held", t.assumptions_held},
                         {"fallback_used", t.fallback_used}});
  return json{{"regime", regime_name(cert.regime.tag)},
              {"terms", terms},
              {"upper_bound", cert.upper_bound},
              {"lower_bound", cert.lower_bound},
              {"all_assumptions_held", cert.all_assumptions_held}};
}

}  // namespace gnpspec
