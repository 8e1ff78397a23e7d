#pragma once

#include <span>
#include <vector>

#include "choquard/functional.hpp"
#include "choquard/grid.hpp"

namespace choquard {

/// Truncated bubble u_eps = psi(r) eps^{-1/2} U(r/eps), with psi a quintic
/// smoothstep cutoff: 1 on [0, delta], 0 on [2 delta, inf).
struct BubbleSpec {
  double eps = 0.1;
  double delta = 5.0;
  GridPtr grid;

  void validate() const;
};

/// Pointwise cutoff and bubble values.
double bubble_cutoff(double r, double delta);
double bubble_value(double r, double eps, double delta);

Field bubble_field(const BubbleSpec& spec);

/// Log-log remainder fit against a predicted asymptotic order.
struct AsymptoticFit {
  double exponent_target = 0.0;
  double exponent_fitted = 0.0;
  double r_squared = 0.0;
  std::vector<double> eps_samples;  // strictly decreasing
  std::vector<double> integrals;    // raw integral per eps
  std::vector<double> remainders;   // |integral - limit constant| per eps
};

/// The remainder came out nonpositive where a positive power law was
/// expected (quadrature error dominates the asymptotic term).
struct FitFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BubbleIntegral {
  gradient,          // int |grad u_eps|^2          = S^{3/2} + O(eps)
  mass,              // int u_eps^2                 = O(eps)
  critical_sobolev,  // int u_eps^6                 = S^{3/2} + O(eps^3)
};

/// Single-integral estimates, evaluated by adaptive quadrature on the closed
/// forms and fitted against the predicted order.
AsymptoticFit verify_single_estimate(double mu, double delta,
                                     std::span<const double> eps_list,
                                     BubbleIntegral kind);

AsymptoticFit verify_gradient_estimate(double mu, double delta,
                                       std::span<const double> eps_list);

/// Double Riesz energy of |u_eps|^q. For (6-mu)/2 < q < 6-mu fits the decay
/// order of the integral itself (target 6-mu-q); for q = 6-mu fits the
/// deficit against C(3,mu)^{3/2} S_{H,L}^{(6-mu)/2} (target (6-mu)/2). The
/// double integrals are computed on compact-support grids with an h^2
/// Richardson step.
AsymptoticFit verify_convolution_estimates(double delta, double mu, double q,
                                           std::span<const double> eps_list);

struct LevelBoundRow {
  double eps = 0.0;
  double level = 0.0;     // max_t Phi_{kappa,nu,tau}(t u_eps)
  double critical = 0.0;  // (5-mu)/(2(6-mu)) S_{H,L}^{(6-mu)/(5-mu)}
};

/// Ray maxima of the bubble family against the critical threshold.
std::vector<LevelBoundRow> verify_level_bound(const ProblemParams& params,
                                              double delta,
                                              std::span<const double> eps_list);

/// Grid resolving the bubble core (h <= eps/points_per_core) on [0, 2 delta],
/// capped at n <= 6000 nodes.
GridPtr bubble_grid(double eps, double delta, double points_per_core = 15.0);

}  // namespace choquard
