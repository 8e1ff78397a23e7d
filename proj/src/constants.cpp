#include "choquard/constants.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "choquard/util.hpp"

namespace choquard {

namespace {

void check_mu(double mu) {
  if (!(mu > 0.0) || !(mu < 3.0))
    throw std::domain_error("constants: mu must lie in (0, 3)");
}

// Rayleigh quotient of U on [0, R] at grid step ~h. U does not vanish at
// r_max, so the derivative uses the open-end stencil.
double rayleigh_quotient(double r_max, double h_target) {
  const auto n = static_cast<std::size_t>(std::llround(r_max / h_target)) - 1;
  const GridPtr g = make_grid(r_max, n);
  const Field u = sample(g, talenti_bubble);
  const Field du = radial_derivative(u, /*dirichlet_end=*/false);
  const double kinetic = l2_norm_sq(du);
  const double l6 = pairwise_sum(g->n, [&](std::size_t i) {
    return g->volume_weight(i) * std::pow(u[i], 6.0);
  });
  return kinetic / std::cbrt(l6);  // |U|_6^2 = (int U^6)^{1/3}
}

// Quotient at radius R with the h^2 grid error removed (steps h, h/2).
double rayleigh_h_extrapolated(double r_max, double h) {
  const double q1 = rayleigh_quotient(r_max, h);
  const double q2 = rayleigh_quotient(r_max, 0.5 * h);
  return (4.0 * q2 - q1) / 3.0;
}

}  // namespace

double talenti_bubble(double r) {
  return std::pow(3.0, 0.25) / std::sqrt(1.0 + r * r);
}

double hls_constant(double mu) {
  check_mu(mu);
  const double pi = std::numbers::pi;
  const double ratio = gamma_fn(1.5) / gamma_fn(3.0);
  return std::pow(pi, 0.5 * mu) * gamma_fn(1.5 - 0.5 * mu) / gamma_fn(3.0 - 0.5 * mu) *
         std::pow(ratio, -1.0 + mu / 3.0);
}

SobolevEstimate sobolev_estimate() {
  // Truncation error of the quotient decays like 1/R (kinetic tail of U);
  // one Richardson step in R on top of the h^2 extrapolation.
  constexpr double h = 0.0125;
  const double q100 = rayleigh_h_extrapolated(100.0, h);
  const double q200 = rayleigh_h_extrapolated(200.0, h);
  SobolevEstimate est;
  est.raw = q200;
  est.extrapolated = 2.0 * q200 - q100;
  return est;
}

double sobolev_constant() {
  static double cached = 0.0;
  static std::once_flag flag;
  std::call_once(flag, [] { cached = sobolev_estimate().extrapolated; });
  return cached;
}

double shl_constant(double mu) {
  check_mu(mu);
  return sobolev_constant() / std::pow(hls_constant(mu), 1.0 / (6.0 - mu));
}

double critical_level(double mu) {
  check_mu(mu);
  const double shl = shl_constant(mu);
  return (5.0 - mu) / (2.0 * (6.0 - mu)) * std::pow(shl, (6.0 - mu) / (5.0 - mu));
}

SharpConstants sharp_constants(double mu) {
  check_mu(mu);
  SharpConstants c;
  c.mu = mu;
  c.c_hls = hls_constant(mu);
  c.s_sobolev = sobolev_constant();
  c.s_hl = shl_constant(mu);
  c.critical_level = critical_level(mu);
  return c;
}

double u_tilde_prefactor(double mu) {
  check_mu(mu);
  const double s = sobolev_constant();
  const double c = hls_constant(mu);
  return std::pow(s, (mu - 3.0) / (4.0 * (5.0 - mu))) *
         std::pow(c, -1.0 / (2.0 * (5.0 - mu)));
}

Field extremal_field(const GridPtr& grid, ExtremalKind kind, double mu, double eps) {
  switch (kind) {
    case ExtremalKind::U:
      return sample(grid, talenti_bubble);
    case ExtremalKind::U_tilde: {
      const double pref = u_tilde_prefactor(mu);
      return sample(grid, [pref](double r) { return pref * talenti_bubble(r); });
    }
    case ExtremalKind::U_eps: {
      if (!(eps > 0.0)) throw std::invalid_argument("extremal_field: eps must be positive");
      return sample(grid, [eps](double r) {
        return talenti_bubble(r / eps) / std::sqrt(eps);
      });
    }
  }
  throw std::logic_error("extremal_field: unknown kind");
}

}  // namespace choquard
