#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "choquard/constants.hpp"
#include "choquard/functional.hpp"
#include "choquard/util.hpp"
#include "oracle.hpp"

using namespace choquard;

namespace {

double l2c(const GridPtr& g, const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < g->n; ++i) s += g->volume_weight(i) * a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  ProblemParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.alpha() > 2.0);
  p.zeta = 5.5;  // outside (5 - mu, 6 - mu) at mu = 1
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.zeta = 4.5;
  p.mu = 3.5;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = ProblemParams{};
  p.tau = 0.0;
  p.zeta = 99.0;  // irrelevant when the subcritical term is off
  CHECK_NOTHROW(p.validate());
  CHECK(ProblemParams::default_zeta(1.0) == doctest::Approx(4.5));
}

TEST_CASE("G and g pointwise values") {
  ProblemParams p;
  CHECK(G_scalar(p, 0.0) == 0.0);
  CHECK(g_scalar(p, 0.0) == 0.0);
  ProblemParams p0 = p;
  p0.tau = 0.0;
  p0.nu = 2.5;
  CHECK(G_scalar(p0, 1.0) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(g_scalar(p0, 1.0) == doctest::Approx((6.0 - p.mu) * 2.5).epsilon(1e-15));
  // Positive-part convention for the subcritical term.
  CHECK(G_scalar(p, -0.7) == doctest::Approx(std::pow(0.7, 5.0)).epsilon(1e-14));
}

TEST_CASE("g is the derivative of G") {
  ProblemParams p;
  const double s = 0.7, h = 1e-5;
  const double fd = (G_scalar(p, s + h) - G_scalar(p, s - h)) / (2.0 * h);
  CHECK(fd == doctest::Approx(g_scalar(p, s)).epsilon(1e-6));
}

TEST_CASE("energy of the zero field") {
  const GridPtr g = make_grid(10.0, 128);
  const RieszKernel kernel = build_kernel(g, 1.0);
  const EnergyBreakdown e = energy(ProblemParams{}, kernel, Field(g));
  CHECK(e.kinetic == 0.0);
  CHECK(e.mass == 0.0);
  CHECK(e.nonlocal == 0.0);
  CHECK(e.total == 0.0);
  CHECK(e.nehari_residual == 0.0);
}

TEST_CASE("energy decomposition is exact and matches a primitive recomposition") {
  const GridPtr g = make_grid(16.0, 1024);
  const RieszKernel kernel = build_kernel(g, 1.0);
  ProblemParams p;
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) {
    const Field u = oracle::random_field(g, rng);
    const EnergyBreakdown e = energy(p, kernel, u);
    CHECK(e.total == e.kinetic + e.mass - e.nonlocal);

    // Recomposition from grid and kernel primitives only.
    const Field lap = laplacian(u);
    double kin = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < g->n; ++i) {
      kin += g->volume_weight(i) * (-lap[i]) * u[i];
      mass += g->volume_weight(i) * p.kappa * u[i] * u[i];
    }
    const Field gu = G_eval(p, u);
    const double nonlocal =
        double_energy(kernel, gu, gu) / (2.0 * (6.0 - p.mu));
    const double total = 0.5 * kin + 0.5 * mass - nonlocal;
    CHECK(e.total == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("energy of the rescaled extremal approaches the critical level") {
  ProblemParams pc;
  pc.kappa = 0.0;
  pc.tau = 0.0;
  double lev[2];
  int k = 0;
  for (double R : {100.0, 200.0}) {
    const GridPtr g = make_grid(R, static_cast<std::size_t>(R / 0.05));
    const RieszKernel kernel = build_kernel(g, 1.0);
    const Functional f(pc, kernel);
    const Field ut = boundary_taper(extremal_field(g, ExtremalKind::U_tilde, 1.0), 0.5);
    lev[k++] = f.energy(ut).total;
  }
  const double extrap = 2.0 * lev[1] - lev[0];
  CHECK(extrap == doctest::Approx(critical_level(1.0)).epsilon(2e-3));
}

TEST_CASE("gradient matches central differences of the energy") {
  const GridPtr g = make_grid(16.0, 1024);
  const RieszKernel kernel = build_kernel(g, 1.0);
  const Functional f(ProblemParams{}, kernel);
  std::mt19937_64 rng(23);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Field u = oracle::random_field(g, rng);
    const Field phi = oracle::random_field(g, rng, false);
    const Field grad = f.gradient(u);
    const double ip = l2c(g, grad, phi);
    const double h = 1e-6;
    Field up = u, um = u;
    for (std::size_t i = 0; i < g->n; ++i) {
      up[i] += h * phi[i];
      um[i] -= h * phi[i];
    }
    const double fd = (f.energy(up).total - f.energy(um).total) / (2.0 * h);
    worst = std::max(worst, std::abs(ip - fd) / std::max(1.0, std::abs(fd)));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("gradient of the projected extremal is small") {
  const GridPtr g = make_grid(200.0, 4000);
  const RieszKernel kernel = build_kernel(g, 1.0);
  ProblemParams pc;
  pc.kappa = 0.0;
  pc.tau = 0.0;
  const Functional f(pc, kernel);
  const Field ut = boundary_taper(extremal_field(g, ExtremalKind::U_tilde, 1.0), 0.5);
  const Field grad = f.gradient(ut);
  const double gnorm = std::sqrt(l2c(g, grad, grad));
  const double unorm = std::sqrt(h1_norm_sq(ut, 1.0));
  CHECK(gnorm < 5e-3 * unorm);
}

TEST_CASE("nehari residual equals the gradient pairing") {
  const GridPtr g = make_grid(16.0, 512);
  const RieszKernel kernel = build_kernel(g, 1.0);
  const Functional f(ProblemParams{}, kernel);
  std::mt19937_64 rng(29);
  for (int k = 0; k < 10; ++k) {
    const Field u = oracle::random_field(g, rng);
    const double psi = f.nehari(u);
    const Field grad = f.gradient(u);
    CHECK(psi == doctest::Approx(l2c(g, grad, u)).epsilon(1e-10));
  }
}

TEST_CASE("nehari residual is positive at small amplitude") {
  const GridPtr g = make_grid(16.0, 512);
  const RieszKernel kernel = build_kernel(g, 1.0);
  const Functional f(ProblemParams{}, kernel);
  Field u = sample(g, [](double r) { return std::exp(-0.5 * r * r); });
  for (auto& v : u.values) v *= 1e-3;
  CHECK(f.nehari(u) > 0.0);
}

TEST_CASE("ambrosetti-rabinowitz inequality for the power model") {
  ProblemParams p;
  const double theta = p.alpha();
  CHECK(theta > 2.0);
  for (double s = 0.05; s < 20.0; s += 0.05) {
    CHECK(theta * G_scalar(p, s) <= 2.0 * s * g_scalar(p, s) * (1.0 + 1e-14));
  }
}

TEST_CASE("g(s)/s is strictly increasing") {
  ProblemParams p;
  double prev = 0.0;
  for (double s = 0.1; s < 10.0; s += 0.1) {
    const double ratio = g_scalar(p, s) / s;
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("mountain pass geometry along a ray") {
  const GridPtr g = make_grid(16.0, 512);
  const RieszKernel kernel = build_kernel(g, 1.0);
  const Functional f(ProblemParams{}, kernel);
  const Field u = sample(g, [](double r) { return std::exp(-0.5 * r * r); });
  const RayCoefficients c = f.ray_coefficients(u);
  CHECK(c.phi(0.0) == 0.0);
  CHECK(c.phi(1e-3) > 0.0);
  CHECK(c.phi(50.0) < 0.0);
}

TEST_CASE("pohozaev residual of the projected pure-critical extremal") {
  const GridPtr g = make_grid(200.0, 3000);
  const RieszKernel kernel = build_kernel(g, 1.0);
  ProblemParams pc;
  pc.kappa = 0.0;
  pc.tau = 0.0;
  const Functional f(pc, kernel);
  Field ut = boundary_taper(extremal_field(g, ExtremalKind::U_tilde, 1.0), 0.5);
  // Project onto the Nehari set by the ray identity Psi(t u) = 0.
  const RayCoefficients c = f.ray_coefficients(ut);
  const double t = std::pow(c.a / c.dcc, 1.0 / (2.0 * c.p - 2.0));
  for (auto& v : ut.values) v *= t;
  const EnergyBreakdown e = f.energy(ut);
  CHECK(std::abs(e.pohozaev_residual) < 1e-3 * e.kinetic);
}

TEST_CASE("default zeta is the midpoint of the admissible range") {
  CHECK(ProblemParams::default_zeta(1.5) == doctest::Approx(4.0));
  CHECK(ProblemParams::default_zeta(0.5) == doctest::Approx(5.0));
}
