#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "choquard/functional.hpp"

namespace choquard {

struct SolverConfig {
  std::size_t max_iters = 20000;
  double grad_tol = 0.0;  // 0 => 1e-6 * ||init||_{H^1} at solve start
  double nehari_tol = 1e-10;
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;

  void validate() const;
};

struct SolveReport {
  Field field;
  double energy = 0.0;
  double grad_norm = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
  std::size_t iterations = 0;
  double decay_rate = 0.0;  // fitted beta of the exponential tail, 0 if no fit
  double max_point = 0.0;   // argmax radius, parabolically refined
  bool converged = false;
};

struct NehariProjection {
  double t = 0.0;
  Field tu;
};

struct RayMax {
  double t = 0.0;
  double level = 0.0;
};

struct DecayFit {
  double beta = 0.0;
  double r_squared = 0.0;
};

/// Bracketing failed while looking for the Nehari crossing (the field is
/// numerically zero or the ray has no sign change).
struct NoSignChangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The iterate collapsed toward zero; the initial guess projects to nothing.
struct DegenerateInitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Too few nodes in the amplitude window for the tail fit.
struct InsufficientTailError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unique t > 0 with Psi(t u) = 0, by bracket expansion from t = 1 and
/// bisection to relative 1e-13 in t.
NehariProjection nehari_project(const Functional& f, const Field& u);
double nehari_project_t(const RayCoefficients& c);

/// Ray maximum of t -> Phi(t u). Coincides with the Nehari point for the
/// power-model nonlinearity; cross-checked against a golden-section search
/// (1e-8 relative agreement enforced).
RayMax ray_max(const Functional& f, const Field& u);

/// Nehari-constrained descent: positivity fold, ray projection, then a
/// backtracking Armijo step along the H^1-preconditioned gradient direction
/// (tangentially corrected), iterated to the gradient tolerance.
SolveReport ground_state(const Functional& f, const SolverConfig& config,
                         const Field& init);

/// Convenience overload for autonomous parameters.
SolveReport ground_state(const ProblemParams& params, const RieszKernel& kernel,
                         const SolverConfig& config, const Field& init);

/// Ground-state levels for two parameter sets ordered per the comparison
/// lemma (kappa_B >= kappa_A, nu_A >= nu_B, tau_A >= tau_B); returns
/// (m_A, m_B) and requires the precondition, else throws invalid_argument.
std::pair<double, double> level_monotonicity(const ProblemParams& params_a,
                                             const ProblemParams& params_b,
                                             const RieszKernel& kernel,
                                             const SolverConfig& config);

/// Least-squares exponential tail fit ln u = ln C - beta r over the nodes
/// beyond the maximum with u in (1e-10, 1e-4). Throws InsufficientTailError
/// if fewer than 20 nodes qualify.
DecayFit decay_check(const SolveReport& report);
DecayFit fit_exponential_tail(const Field& u, double lo_amp = 1e-10,
                              double hi_amp = 1e-4);

/// Argmax radius with 3-point parabolic refinement (0 when the profile peaks
/// at the origin).
double max_point(const Field& u);

/// Gaussian bump exp(-r^2 / (2 width^2)), the standard initial guess.
Field gaussian_init(const GridPtr& grid, double width, double amplitude = 1.0);

}  // namespace choquard
