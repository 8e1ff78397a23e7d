#include "choquard/solver.hpp"

#include <algorithm>
#include <cmath>

#include "choquard/util.hpp"

namespace choquard {

namespace {

double l2c_dot(const RadialGrid& g, const Field& a, const Field& b) {
  return pairwise_sum(g.n, [&](std::size_t i) { return g.volume_weight(i) * a[i] * b[i]; });
}

bool coefficients_trivial(const RayCoefficients& c) {
  return !(c.a > 0.0) || (c.dcc + c.dcf + c.dff) <= 0.0;
}

Field abs_field(const Field& u) {
  Field out = u;
  for (auto& v : out.values) v = std::abs(v);
  return out;
}

void scale_field(Field& f, double s) {
  for (auto& v : f.values) v *= s;
}

// Energy bilinear form matching norm_sq of the functional.
double e_form(const Functional& f, const Field& a, const Field& b) {
  const RadialGrid& g = *f.grid();
  const double massk = pairwise_sum(g.n, [&](std::size_t i) {
    return g.volume_weight(i) * f.kappa_field()[i] * a[i] * b[i];
  });
  return dirichlet_form(a, b) + massk;
}

}  // namespace

void SolverConfig::validate() const {
  if (max_iters == 0) throw std::invalid_argument("SolverConfig: max_iters must be positive");
  if (grad_tol < 0.0) throw std::invalid_argument("SolverConfig: grad_tol must be >= 0");
  if (!(nehari_tol > 0.0)) throw std::invalid_argument("SolverConfig: nehari_tol must be positive");
  if (!(step_init > 0.0)) throw std::invalid_argument("SolverConfig: step_init must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::invalid_argument("SolverConfig: backtrack_factor must lie in (0, 1)");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw std::invalid_argument("SolverConfig: armijo_c must lie in (0, 1)");
}

double nehari_project_t(const RayCoefficients& c) {
  if (coefficients_trivial(c))
    throw NoSignChangeError("nehari_project: field is numerically zero");
  // chi(t) = Psi(t u)/t^2 is strictly decreasing with chi(0+) = a > 0.
  auto chi = [&c](double t) {
    return c.a - std::pow(t, 2.0 * c.p - 2.0) * c.dcc -
           ((c.p + c.z) / c.p) * std::pow(t, c.p + c.z - 2.0) * c.dcf -
           (c.z / c.p) * std::pow(t, 2.0 * c.z - 2.0) * c.dff;
  };
  double lo = 1.0, hi = 1.0;
  if (chi(1.0) > 0.0) {
    int k = 0;
    while (chi(hi) > 0.0) {
      hi *= 2.0;
      if (++k > 60) throw NoSignChangeError("nehari_project: no sign change while expanding");
    }
    lo = hi / 2.0;
  } else {
    int k = 0;
    while (chi(lo) <= 0.0) {
      lo /= 2.0;
      if (++k > 60) throw NoSignChangeError("nehari_project: no sign change while shrinking");
    }
    hi = lo * 2.0;
  }
  return bisect(chi, lo, hi, 1e-13);
}

NehariProjection nehari_project(const Functional& f, const Field& u) {
  const RayCoefficients c = f.ray_coefficients(u);
  NehariProjection proj;
  proj.t = nehari_project_t(c);
  proj.tu = u;
  scale_field(proj.tu, proj.t);
  return proj;
}

RayMax ray_max(const Functional& f, const Field& u) {
  const RayCoefficients c = f.ray_coefficients(u);
  RayMax rm;
  rm.t = nehari_project_t(c);
  rm.level = c.phi(rm.t);

  // Golden-section cross-check of the scalar maximum.
  double hi = 2.0 * rm.t;
  while (c.phi(hi) > 0.0) hi *= 2.0;
  constexpr double invphi = 0.6180339887498949;
  double a = 0.0, b = hi;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = c.phi(x1), f2 = c.phi(x2);
  while (b - a > 1e-10 * std::max(1.0, rm.t)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = c.phi(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = c.phi(x1);
    }
  }
  const double golden_level = c.phi(0.5 * (a + b));
  if (std::abs(golden_level - rm.level) > 1e-8 * std::abs(rm.level))
    throw std::logic_error("ray_max: golden-section maximum disagrees with Nehari point");
  return rm;
}

double max_point(const Field& u) {
  const RadialGrid& g = *u.grid;
  const std::size_t n = g.n;
  std::size_t m = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (u[i] > u[m]) m = i;
  const double h = g.h;
  // Three-point parabola; the r=0 ghost uses the even extension, the r_max
  // ghost the Dirichlet value.
  const double um = m == 0 ? (4.0 * u[0] - u[1]) / 3.0 : u[m - 1];
  const double up = m + 1 == n ? 0.0 : u[m + 1];
  const double denom = um - 2.0 * u[m] + up;
  if (denom == 0.0) return g.nodes[m];
  const double shift = 0.5 * h * (um - up) / denom;
  return std::max(0.0, g.nodes[m] + shift);
}

DecayFit fit_exponential_tail(const Field& u, double lo_amp, double hi_amp) {
  const RadialGrid& g = *u.grid;
  std::size_t m = 0;
  for (std::size_t i = 1; i < g.n; ++i)
    if (u[i] > u[m]) m = i;
  std::vector<double> rs, ls;
  for (std::size_t i = m + 1; i < g.n; ++i) {
    if (u[i] > lo_amp && u[i] < hi_amp) {
      rs.push_back(g.nodes[i]);
      ls.push_back(std::log(u[i]));
    }
  }
  if (rs.size() < 20)
    throw InsufficientTailError("fit_exponential_tail: fewer than 20 nodes in window");
  const LineFit fit = fit_line(rs, ls);
  return DecayFit{-fit.slope, fit.r_squared};
}

DecayFit decay_check(const SolveReport& report) {
  return fit_exponential_tail(report.field);
}

Field gaussian_init(const GridPtr& grid, double width, double amplitude) {
  return sample(grid, [width, amplitude](double r) {
    return amplitude * std::exp(-r * r / (2.0 * width * width));
  });
}

SolveReport ground_state(const Functional& f, const SolverConfig& config,
                         const Field& init) {
  config.validate();
  const RadialGrid& g = *f.grid();

  Field u = abs_field(init);
  const double init_norm = std::sqrt(f.norm_sq(u));
  if (!(init_norm > 0.0)) throw DegenerateInitError("ground_state: zero initial field");
  const double grad_tol = config.grad_tol > 0.0 ? config.grad_tol : 1e-6 * init_norm;

  // Project the initial guess onto the Nehari manifold.
  Functional::RayFields rf = f.ray_fields(u);
  RayCoefficients coeffs = f.coefficients_from(u, rf);
  double t = nehari_project_t(coeffs);
  scale_field(u, t);
  scale_field(rf.crit, std::pow(t, coeffs.p));
  scale_field(rf.k_crit, std::pow(t, coeffs.p));
  scale_field(rf.sub, std::pow(t, coeffs.z));
  scale_field(rf.k_sub, std::pow(t, coeffs.z));
  double energy_now = coeffs.phi(t);
  double psi_now = coeffs.psi(t);
  double norm_now = std::sqrt(f.norm_sq(u));

  SolveReport report;
  double step = config.step_init;
  bool converged = false;
  double grad_norm = 0.0;
  std::size_t iter = 0;
  Field u_prev, dir_prev;

  for (; iter < config.max_iters; ++iter) {
    const Field grad = f.gradient_from(u, rf);

    // Tangential component relative to the ray direction.
    const double uu = l2c_dot(g, u, u);
    const double gu = l2c_dot(g, grad, u);
    Field gtan = grad;
    for (std::size_t i = 0; i < g.n; ++i) gtan[i] -= (gu / uu) * u[i];
    grad_norm = std::sqrt(l2c_dot(g, gtan, gtan));

    if (grad_norm <= grad_tol && std::abs(psi_now) <= config.nehari_tol * norm_now * norm_now) {
      converged = true;
      break;
    }

    // H^1-preconditioned direction, orthogonalized against u in the energy
    // inner product so the step does not fight the re-projection.
    Field dir = helmholtz_solve(f.kappa_field(), grad);
    const double proj = e_form(f, dir, u) / e_form(f, u, u);
    for (std::size_t i = 0; i < g.n; ++i) dir[i] -= proj * u[i];
    double slope = l2c_dot(g, grad, dir);
    if (!(slope > 0.0)) {
      dir = gtan;
      slope = l2c_dot(g, grad, dir);
      if (!(slope > 0.0)) break;  // no descent direction left
    }

    // Barzilai-Borwein warm start for the line search (Armijo still
    // safeguards the actual step).
    if (iter > 0) {
      double duu = 0.0, dud = 0.0;
      for (std::size_t i = 0; i < g.n; ++i) {
        const double du = u[i] - u_prev[i];
        duu += g.volume_weight(i) * du * du;
        dud += g.volume_weight(i) * du * (dir[i] - dir_prev[i]);
      }
      if (dud > 0.0 && duu > 0.0) step = std::clamp(duu / dud, 1e-8, 1e6);
    }
    u_prev = u;
    dir_prev = dir;

    bool accepted = false;
    // Relative move cap: a single step never displaces the iterate by more
    // than half its energy norm, which keeps the search inside the basin the
    // iterate currently occupies (the critical term admits spurious
    // grid-scale basins that a wild first step can jump into).
    const double cap = 0.5 * std::sqrt(e_form(f, u, u) / e_form(f, dir, dir));
    double s = std::min(step, cap);
    while (s > 1e-16 * config.step_init) {
      Field trial(u.grid);
      for (std::size_t i = 0; i < g.n; ++i) trial[i] = std::abs(u[i] - s * dir[i]);
      Functional::RayFields rf_trial = f.ray_fields(trial);
      const RayCoefficients c_trial = f.coefficients_from(trial, rf_trial);
      if (!coefficients_trivial(c_trial)) {
        const double t_trial = nehari_project_t(c_trial);
        const double e_trial = c_trial.phi(t_trial);
        if (e_trial <= energy_now - config.armijo_c * s * slope) {
          scale_field(trial, t_trial);
          u = std::move(trial);
          scale_field(rf_trial.crit, std::pow(t_trial, c_trial.p));
          scale_field(rf_trial.k_crit, std::pow(t_trial, c_trial.p));
          scale_field(rf_trial.sub, std::pow(t_trial, c_trial.z));
          scale_field(rf_trial.k_sub, std::pow(t_trial, c_trial.z));
          rf = std::move(rf_trial);
          energy_now = e_trial;
          psi_now = c_trial.psi(t_trial);
          norm_now = std::sqrt(f.norm_sq(u));
          accepted = true;
          break;
        }
      }
      s *= config.backtrack_factor;
    }
    if (!accepted) {
      // Line search exhausted: the iterate is as converged as the
      // discretization allows.
      converged = grad_norm <= grad_tol;
      ++iter;
      break;
    }
    step = std::min(s / config.backtrack_factor, 1e6);

    if (norm_now < 1e-10 * init_norm)
      throw DegenerateInitError("ground_state: iterate collapsed to zero");
  }

  report.field = u;
  report.energy = energy_now;
  report.grad_norm = grad_norm;
  report.nehari_residual = psi_now;
  report.iterations = iter;
  report.converged = converged;
  report.max_point = max_point(u);
  report.pohozaev_residual = f.energy(u).pohozaev_residual;
  try {
    report.decay_rate = fit_exponential_tail(u).beta;
  } catch (const InsufficientTailError&) {
    report.decay_rate = 0.0;
  }
  return report;
}

SolveReport ground_state(const ProblemParams& params, const RieszKernel& kernel,
                         const SolverConfig& config, const Field& init) {
  return ground_state(Functional(params, kernel), config, init);
}

std::pair<double, double> level_monotonicity(const ProblemParams& params_a,
                                             const ProblemParams& params_b,
                                             const RieszKernel& kernel,
                                             const SolverConfig& config) {
  if (params_a.mu != params_b.mu || params_a.zeta != params_b.zeta)
    throw std::invalid_argument("level_monotonicity: mu and zeta must agree");
  const double d_kappa = params_b.kappa - params_a.kappa;
  const double d_nu = params_a.nu - params_b.nu;
  const double d_tau = params_a.tau - params_b.tau;
  if (std::min({d_kappa, d_nu, d_tau}) < 0.0)
    throw std::invalid_argument(
        "level_monotonicity: need kappa_b >= kappa_a, nu_a >= nu_b, tau_a >= tau_b");
  const Field init = gaussian_init(kernel.grid(), 2.0);
  const double m_a = ground_state(params_a, kernel, config, init).energy;
  const double m_b = ground_state(params_b, kernel, config, init).energy;
  return {m_a, m_b};
}

}  // namespace choquard
