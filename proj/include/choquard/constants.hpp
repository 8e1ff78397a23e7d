#pragma once

#include "choquard/grid.hpp"

namespace choquard {

/// The sharp constants attached to the critical nonlocal problem at a given
/// Riesz exponent mu in (0, 3).
struct SharpConstants {
  double mu = 0.0;
  double c_hls = 0.0;           // C(3, mu)
  double s_sobolev = 0.0;       // S
  double s_hl = 0.0;            // S_{H,L} = S / C(3,mu)^{1/(6-mu)}
  double critical_level = 0.0;  // (5-mu)/(2(6-mu)) * S_{H,L}^{(6-mu)/(5-mu)}
};

/// C(3, mu) = pi^{mu/2} Gamma(3/2 - mu/2)/Gamma(3 - mu/2)
///            * (Gamma(3/2)/Gamma(3))^{-1 + mu/3}.
double hls_constant(double mu);

struct SobolevEstimate {
  double raw = 0.0;           // quotient at the largest truncation radius
  double extrapolated = 0.0;  // Richardson limit in radius and step
};

/// Rayleigh quotient of U(x) = 3^{1/4} (1 + |x|^2)^{-1/2} on nested truncated
/// domains, extrapolated in the cutoff radius (1/R error) and the grid step
/// (h^2 error).
SobolevEstimate sobolev_estimate();

/// The extrapolated value of S (cached after the first call).
double sobolev_constant();

double shl_constant(double mu);
double critical_level(double mu);

SharpConstants sharp_constants(double mu);

enum class ExtremalKind { U, U_tilde, U_eps };

/// Samples U, U~ = S^{(mu-3)/(4(5-mu))} C(3,mu)^{-1/(2(5-mu))} U, or
/// U_eps = eps^{-1/2} U(./eps) on the grid. eps is ignored except for U_eps.
Field extremal_field(const GridPtr& grid, ExtremalKind kind, double mu = 1.0,
                     double eps = 1.0);

/// Pointwise U(r).
double talenti_bubble(double r);

/// The prefactor of U~ relative to U.
double u_tilde_prefactor(double mu);

}  // namespace choquard
