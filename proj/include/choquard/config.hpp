#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "choquard/functional.hpp"
#include "choquard/semiclassical.hpp"
#include "choquard/solver.hpp"

namespace choquard {

struct GridConfig {
  double r_max = 40.0;
  std::size_t n = 4000;
};

/// Run configuration shared by all CLI subcommands. Omitted sections take
/// the documented defaults; zeta defaults to the midpoint 5.5 - mu.
struct RunConfig {
  ProblemParams params;
  GridConfig grid;
  SolverConfig solver;
  std::optional<Potential> potential;
  std::uint64_t seed = 12345;
};

RunConfig default_config();

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

RunConfig load_config(const std::string& path);

ProblemParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ProblemParams& p);

Potential potential_from_json(const nlohmann::json& j);
nlohmann::json potential_to_json(const Potential& p);

}  // namespace choquard
