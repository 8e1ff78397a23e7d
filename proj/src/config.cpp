#include "choquard/config.hpp"

#include <fstream>

namespace choquard {

using nlohmann::json;

RunConfig default_config() { return RunConfig{}; }

ProblemParams params_from_json(const json& j) {
  ProblemParams p;
  p.mu = j.value("mu", p.mu);
  p.kappa = j.value("kappa", p.kappa);
  p.nu = j.value("nu", p.nu);
  p.tau = j.value("tau", p.tau);
  p.zeta = j.contains("zeta") ? j.at("zeta").get<double>()
                              : ProblemParams::default_zeta(p.mu);
  p.validate();
  return p;
}

json params_to_json(const ProblemParams& p) {
  return json{{"mu", p.mu}, {"kappa", p.kappa}, {"nu", p.nu},
              {"tau", p.tau}, {"zeta", p.zeta}};
}

Potential potential_from_json(const json& j) {
  Potential p;
  p.kind = potential_kind_from_string(j.at("kind").get<std::string>());
  p.base = j.value("base", p.base);
  p.amplitude = j.value("amplitude", p.amplitude);
  p.width = j.value("width", p.width);
  p.validate();
  return p;
}

json potential_to_json(const Potential& p) {
  return json{{"kind", to_string(p.kind)},
              {"base", p.base},
              {"amplitude", p.amplitude},
              {"width", p.width}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (j.contains("params")) c.params = params_from_json(j.at("params"));
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid.r_max = g.value("r_max", c.grid.r_max);
    c.grid.n = g.value("n", c.grid.n);
  }
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    c.solver.max_iters = s.value("max_iters", c.solver.max_iters);
    c.solver.grad_tol = s.value("grad_tol", c.solver.grad_tol);
    c.solver.nehari_tol = s.value("nehari_tol", c.solver.nehari_tol);
    c.solver.step_init = s.value("step_init", c.solver.step_init);
    c.solver.backtrack_factor = s.value("backtrack_factor", c.solver.backtrack_factor);
    c.solver.armijo_c = s.value("armijo_c", c.solver.armijo_c);
    c.solver.validate();
  }
  if (j.contains("potential") && !j.at("potential").is_null())
    c.potential = potential_from_json(j.at("potential"));
  c.seed = j.value("seed", c.seed);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["params"] = params_to_json(c.params);
  j["grid"] = json{{"r_max", c.grid.r_max}, {"n", c.grid.n}};
  j["solver"] = json{{"max_iters", c.solver.max_iters},
                     {"grad_tol", c.solver.grad_tol},
                     {"nehari_tol", c.solver.nehari_tol},
                     {"step_init", c.solver.step_init},
                     {"backtrack_factor", c.solver.backtrack_factor},
                     {"armijo_c", c.solver.armijo_c}};
  if (c.potential) j["potential"] = potential_to_json(*c.potential);
  j["seed"] = c.seed;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return config_from_json(j);
}

}  // namespace choquard
