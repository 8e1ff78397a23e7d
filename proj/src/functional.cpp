#include "choquard/functional.hpp"

#include <cmath>
#include <stdexcept>

#include "choquard/util.hpp"

namespace choquard {

void ProblemParams::validate() const {
  if (!(mu > 0.0) || !(mu < 3.0))
    throw std::domain_error("ProblemParams: mu must lie in (0, 3)");
  if (!(nu > 0.0)) throw std::domain_error("ProblemParams: nu must be positive");
  if (kappa < 0.0) throw std::domain_error("ProblemParams: kappa must be nonnegative");
  if (tau < 0.0) throw std::domain_error("ProblemParams: tau must be nonnegative");
  if (tau > 0.0 && !(zeta > 5.0 - mu && zeta < 6.0 - mu))
    throw std::domain_error("ProblemParams: zeta must lie in (5 - mu, 6 - mu)");
}

double ProblemParams::alpha() const {
  return std::min(2.0 * zeta, 2.0 * (6.0 - mu));
}

double G_scalar(const ProblemParams& p, double s) {
  const double crit = p.nu * std::pow(std::abs(s), 6.0 - p.mu);
  const double sp = std::max(s, 0.0);
  const double sub = p.tau == 0.0 ? 0.0 : p.tau * std::pow(sp, p.zeta) / p.zeta;
  return crit + sub;
}

double g_scalar(const ProblemParams& p, double s) {
  const double crit = (6.0 - p.mu) * p.nu * std::pow(std::abs(s), 4.0 - p.mu) * s;
  const double sp = std::max(s, 0.0);
  const double sub = p.tau == 0.0 ? 0.0 : p.tau * std::pow(sp, p.zeta - 1.0);
  return crit + sub;
}

Field G_eval(const ProblemParams& params, const Field& u) {
  Field out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = G_scalar(params, u[i]);
  return out;
}

Field g_eval(const ProblemParams& params, const Field& u) {
  Field out(u.grid);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = g_scalar(params, u[i]);
  return out;
}

double RayCoefficients::phi(double t) const {
  const double t2 = t * t;
  return 0.5 * t2 * a - (std::pow(t, 2.0 * p) * dcc + 2.0 * std::pow(t, p + z) * dcf +
                         std::pow(t, 2.0 * z) * dff) /
                            (2.0 * p);
}

double RayCoefficients::psi(double t) const {
  const double t2 = t * t;
  return t2 * a - std::pow(t, 2.0 * p) * dcc -
         ((p + z) / p) * std::pow(t, p + z) * dcf -
         (z / p) * std::pow(t, 2.0 * z) * dff;
}

Functional::Functional(ProblemParams params, const RieszKernel& kernel)
    : params_(params), kernel_(&kernel) {
  params_.validate();
  kappa_ = Field(kernel.grid(), params_.kappa);
  weight_ = Field(kernel.grid(), 1.0);
}

void Functional::set_kappa_field(Field kappa) {
  if (kappa.grid != grid()) throw std::invalid_argument("set_kappa_field: grid mismatch");
  kappa_ = std::move(kappa);
}

void Functional::set_weight_field(Field weight) {
  if (weight.grid != grid()) throw std::invalid_argument("set_weight_field: grid mismatch");
  weight_ = std::move(weight);
}

double Functional::norm_sq(const Field& u) const {
  const RadialGrid& g = *grid();
  const double massk = pairwise_sum(g.n, [&](std::size_t i) {
    return g.volume_weight(i) * kappa_[i] * u[i] * u[i];
  });
  return dirichlet_energy(u) + massk;
}

Functional::RayFields Functional::ray_fields(const Field& u) const {
  if (u.grid != grid()) throw std::invalid_argument("Functional: field grid mismatch");
  const std::size_t n = grid()->n;
  const double p = 6.0 - params_.mu;
  RayFields rf{Field(u.grid), Field(u.grid), Field(u.grid), Field(u.grid)};
  for (std::size_t i = 0; i < n; ++i) {
    rf.crit[i] = weight_[i] * params_.nu * std::pow(std::abs(u[i]), p);
    rf.sub[i] = params_.tau == 0.0
                    ? 0.0
                    : weight_[i] * (params_.tau / params_.zeta) *
                          std::pow(std::max(u[i], 0.0), params_.zeta);
  }
  rf.k_crit = riesz_apply(*kernel_, rf.crit);
  rf.k_sub = params_.tau == 0.0 ? Field(u.grid) : riesz_apply(*kernel_, rf.sub);
  return rf;
}

RayCoefficients Functional::coefficients_from(const Field& u, const RayFields& rf) const {
  RayCoefficients c;
  c.p = 6.0 - params_.mu;
  c.z = params_.zeta;
  c.a = norm_sq(u);
  c.dcc = double_energy_with(*kernel_, rf.crit, rf.k_crit);
  if (params_.tau != 0.0) {
    c.dcf = double_energy_with(*kernel_, rf.crit, rf.k_sub);
    c.dff = double_energy_with(*kernel_, rf.sub, rf.k_sub);
  }
  return c;
}

RayCoefficients Functional::ray_coefficients(const Field& u) const {
  return coefficients_from(u, ray_fields(u));
}

Field Functional::gradient_from(const Field& u, const RayFields& rf) const {
  const std::size_t n = grid()->n;
  const double p = 6.0 - params_.mu;
  Field grad = laplacian(u);
  for (std::size_t i = 0; i < n; ++i) {
    const double kg = rf.k_crit[i] + rf.k_sub[i];  // K(w G(u))
    grad[i] = -grad[i] + kappa_[i] * u[i] -
              (1.0 / p) * weight_[i] * kg * g_scalar(params_, u[i]);
  }
  return grad;
}

Field Functional::gradient(const Field& u) const {
  return gradient_from(u, ray_fields(u));
}

double Functional::nehari(const Field& u) const {
  return ray_coefficients(u).psi(1.0);
}

EnergyBreakdown Functional::energy(const Field& u) const {
  const RayFields rf = ray_fields(u);
  const RayCoefficients c = coefficients_from(u, rf);
  const RadialGrid& g = *grid();

  EnergyBreakdown e;
  e.kinetic = 0.5 * dirichlet_energy(u);
  e.mass = 0.5 * pairwise_sum(g.n, [&](std::size_t i) {
    return g.volume_weight(i) * kappa_[i] * u[i] * u[i];
  });
  e.nonlocal = (c.dcc + 2.0 * c.dcf + c.dff) / (2.0 * c.p);
  e.total = e.kinetic + e.mass - e.nonlocal;
  e.nehari_residual = c.psi(1.0);

  // Pohozaev diagnostic for the pure-critical autonomous equation; reported
  // always but meaningful only when tau = 0.
  double d00;
  bool unit_weight = true;
  for (std::size_t i = 0; i < g.n && unit_weight; ++i)
    unit_weight = weight_[i] == 1.0;
  if (unit_weight) {
    d00 = c.dcc / (params_.nu * params_.nu);
  } else {
    const double p = 6.0 - params_.mu;
    Field cf(u.grid);
    for (std::size_t i = 0; i < g.n; ++i) cf[i] = std::pow(std::abs(u[i]), p);
    d00 = double_energy(*kernel_, cf, cf);
  }
  e.pohozaev_residual = e.kinetic + 3.0 * params_.kappa * l2_norm_sq(u) / 2.0 -
                        0.5 * params_.nu * params_.nu * d00;
  return e;
}

EnergyBreakdown energy(const ProblemParams& params, const RieszKernel& kernel,
                       const Field& u) {
  return Functional(params, kernel).energy(u);
}

Field energy_gradient(const ProblemParams& params, const RieszKernel& kernel,
                      const Field& u) {
  return Functional(params, kernel).gradient(u);
}

double nehari_residual(const ProblemParams& params, const RieszKernel& kernel,
                       const Field& u) {
  return Functional(params, kernel).nehari(u);
}

}  // namespace choquard
