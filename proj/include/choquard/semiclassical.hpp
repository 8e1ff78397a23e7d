#pragma once

#include <span>
#include <string>
#include <vector>

#include "choquard/solver.hpp"

namespace choquard {

enum class PotentialKind { gaussian_well, gaussian_bump, constant };

/// Radial coefficient function with its extremum at the origin.
///   gaussian_well: V(r) = base + amplitude (1 - exp(-(r/width)^2)),
///                  min = base at r = 0, limit base + amplitude at infinity.
///   gaussian_bump: Q(r) = base + amplitude exp(-(r/width)^2),
///                  max = base + amplitude at r = 0, limit base at infinity.
///   constant:      base everywhere.
struct Potential {
  PotentialKind kind = PotentialKind::constant;
  double base = 1.0;
  double amplitude = 1.0;
  double width = 2.0;

  void validate() const;
  double value(double r) const;
  double center_value() const;  // value at the extremum r = 0
  double limit_value() const;   // value as r -> infinity
};

PotentialKind potential_kind_from_string(const std::string& s);
std::string to_string(PotentialKind kind);

/// Rescaled problem with the nonlinear potential: the weight Q(eps r)
/// multiplies G before the kernel on both factors of the double integral.
SolveReport solve_scc1(double eps, const Potential& q, const ProblemParams& params,
                       const RieszKernel& kernel, const SolverConfig& config,
                       const Field& init);

/// Rescaled problem with the linear potential: kappa(r) = V(eps r) inside
/// the quadratic part of the energy.
SolveReport solve_scc2(double eps, const Potential& v, const ProblemParams& params,
                       const RieszKernel& kernel, const SolverConfig& config,
                       const Field& init);

/// Ground-state level of the truncated-weight functional with weight
/// min(d, Q(eps r)).
double truncated_level(double eps, const Potential& q, double d,
                       const ProblemParams& params, const RieszKernel& kernel,
                       const SolverConfig& config, const Field& init);

enum class SweepProblem { scc1, scc2 };

struct SweepRow {
  double eps = 0.0;
  double energy = 0.0;
  double max_point = 0.0;
  double decay_beta = 0.0;
  double limit_gap = 0.0;     // energy - reference autonomous level
  double h1_dist_prev = 0.0;  // H^1 distance to the previous row's profile
  bool converged = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double reference_level = 0.0;  // m_{1, nu_max, nu_max} resp. m_{kappa_min, 1, 1}
};

/// Solves the rescaled problem for each eps (decreasing, >= 3 values) and
/// reports energies, concentration points and decay rates against the
/// limiting autonomous level.
SweepResult concentration_sweep(SweepProblem problem, const Potential& pot,
                                std::span<const double> eps_list,
                                const ProblemParams& params,
                                const RieszKernel& kernel,
                                const SolverConfig& config);

}  // namespace choquard
