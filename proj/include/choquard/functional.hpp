#pragma once

#include <optional>

#include "choquard/grid.hpp"
#include "choquard/riesz.hpp"

namespace choquard {

/// Parameters of the autonomous energy: mass coefficient kappa, critical
/// coefficient nu, subcritical coefficient tau, and the subcritical power
/// zeta of f(s) = s^{zeta-1} (s > 0), which must satisfy
/// 5 - mu < zeta < 6 - mu.
struct ProblemParams {
  double mu = 1.0;
  double kappa = 1.0;
  double nu = 1.0;
  double tau = 1.0;
  double zeta = 4.5;

  /// Midpoint of the admissible zeta range for a given mu.
  static double default_zeta(double mu) { return 5.5 - mu; }

  void validate() const;

  /// Superquadraticity exponent alpha = min(2 zeta, 2(6 - mu)) > 2.
  double alpha() const;
};

/// Additive decomposition of Phi(u); total = kinetic + mass - nonlocal holds
/// exactly by construction.
struct EnergyBreakdown {
  double kinetic = 0.0;            // 1/2 int |grad u|^2
  double mass = 0.0;               // 1/2 int kappa u^2
  double nonlocal = 0.0;           // double-integral term
  double total = 0.0;              // Phi(u)
  double nehari_residual = 0.0;    // Psi(u)
  double pohozaev_residual = 0.0;  // diagnostic, meaningful only for tau = 0
};

/// G(s) = nu |s|^{6-mu} + tau s_+^zeta / zeta, evaluated pointwise.
Field G_eval(const ProblemParams& params, const Field& u);
/// g(s) = (6-mu) nu |s|^{4-mu} s + tau s_+^{zeta-1}.
Field g_eval(const ProblemParams& params, const Field& u);

double G_scalar(const ProblemParams& params, double s);
double g_scalar(const ProblemParams& params, double s);

/// Coefficients of the scalar ray functions through a fixed u:
///   Phi(t u) = t^2 a / 2 - (t^{2p} Dcc + 2 t^{p+z} Dcf + t^{2z} Dff) / (2p)
///   Psi(t u) = t^2 a - t^{2p} Dcc - ((p+z)/p) t^{p+z} Dcf - (z/p) t^{2z} Dff
/// with p = 6 - mu and z = zeta.
struct RayCoefficients {
  double a = 0.0;    // int (|grad u|^2 + kappa u^2)
  double dcc = 0.0;  // critical-critical double energy
  double dcf = 0.0;  // critical-subcritical
  double dff = 0.0;  // subcritical-subcritical
  double p = 0.0;
  double z = 0.0;

  double phi(double t) const;
  double psi(double t) const;
};

/// The energy Phi_{kappa,nu,tau} with optional radial coefficient fields:
/// a node-wise kappa(r) (linear potential V(eps r)) and a node-wise weight
/// w(r) multiplying G before the kernel (nonlinear potential Q(eps r)).
/// Constant coefficients reproduce the autonomous functional.
class Functional {
 public:
  Functional(ProblemParams params, const RieszKernel& kernel);

  const ProblemParams& params() const { return params_; }
  const RieszKernel& kernel() const { return *kernel_; }
  const GridPtr& grid() const { return kernel_->grid(); }

  void set_kappa_field(Field kappa);
  void set_weight_field(Field weight);
  const Field& kappa_field() const { return kappa_; }
  const Field& weight_field() const { return weight_; }

  EnergyBreakdown energy(const Field& u) const;

  /// L^2 representative of Phi'(u):
  ///   grad(u) = -Delta u + kappa u - (1/(6-mu)) w * (K (w G(u))) * g(u).
  Field gradient(const Field& u) const;

  /// Psi(u) = <Phi'(u), u>.
  double nehari(const Field& u) const;

  /// Quadratic/nonlocal coefficients of the ray through u (two kernel
  /// applications; everything else on the ray is then scalar).
  RayCoefficients ray_coefficients(const Field& u) const;

  /// H^1-type squared norm int (|grad u|^2 + kappa(r) u^2).
  double norm_sq(const Field& u) const;

  /// Gradient and Psi'(u)-pairing pieces reused by the solver: given the ray
  /// fields of u, returns the gradient without recomputing kernel products.
  struct RayFields {
    Field crit;  // w nu |u|^{6-mu}
    Field sub;   // w (tau/zeta) u_+^{zeta}
    Field k_crit;
    Field k_sub;
  };
  RayFields ray_fields(const Field& u) const;
  RayCoefficients coefficients_from(const Field& u, const RayFields& rf) const;
  Field gradient_from(const Field& u, const RayFields& rf) const;

 private:
  ProblemParams params_;
  const RieszKernel* kernel_;
  Field kappa_;   // per-node kappa(r)
  Field weight_;  // per-node weight w(r)
};

/// Free functions in terms of the autonomous parameters.
EnergyBreakdown energy(const ProblemParams& params, const RieszKernel& kernel,
                       const Field& u);
Field energy_gradient(const ProblemParams& params, const RieszKernel& kernel,
                      const Field& u);
double nehari_residual(const ProblemParams& params, const RieszKernel& kernel,
                       const Field& u);

}  // namespace choquard
