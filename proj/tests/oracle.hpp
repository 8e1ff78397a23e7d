// Test-only reference computations, kept independent of the library paths
// they are used to check.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "choquard/grid.hpp"
#include "choquard/util.hpp"

namespace oracle {

// 64-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
struct GaussLegendre {
  std::vector<double> x, w;

  explicit GaussLegendre(int n = 64) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double step = p1 / dp;
        xi -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      x[i] = xi;
      w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
  }

  double integrate(const std::function<double(double)>& f, double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + half * x[i]);
    return half * s;
  }
};

// Angular integral int_{-1}^{1} (r^2 + s^2 - 2 r s t)^{-mu/2} dt by 64-point
// Gauss-Legendre panels graded toward t = 1 (where the integrand peaks when
// r ~ s), plus the exact integral over the final sliver [1 - eta, 1]: the
// argument is linear in t, so that piece has an elementary antiderivative.
inline double angular_quadrature(double mu, double r, double s) {
  static const GaussLegendre gl;
  auto f = [&](double t) {
    return std::pow(r * r + s * s - 2.0 * r * s * t, -0.5 * mu);
  };
  const double eta = 1e-10;
  double acc = 0.0;
  double b = 1.0 - eta;
  for (double width : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.4}) {
    const double a = 1.0 - width;
    acc += gl.integrate(f, a, b);
    b = a;
  }
  acc += gl.integrate(f, -1.0, b);
  // Sliver: q^2 + 2 r s (1 - t) with q = |r - s|, exactly in t.
  const double q2 = (r - s) * (r - s);
  const double a_exp = 1.0 - 0.5 * mu;
  if (mu == 2.0) {
    acc += (std::log(q2 + 2.0 * r * s * eta) - std::log(q2)) / (2.0 * r * s);
  } else {
    acc += (std::pow(q2 + 2.0 * r * s * eta, a_exp) - std::pow(q2, a_exp)) /
           (2.0 * r * s * a_exp);
  }
  return acc;
}

// Direct O(n^2) double Riesz energy on a coarse grid: radius x radius sum
// with the 64-point angular quadrature, no closed-form kernel, no cell
// corrections.
inline double brute_double_energy(const choquard::GridPtr& g, double mu,
                                  const choquard::Field& f, const choquard::Field& h) {
  const double four_pi = 4.0 * std::numbers::pi;
  double acc = 0.0;
  for (std::size_t i = 0; i < g->n; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < g->n; ++j) {
      const double s = g->nodes[j];
      inner += 2.0 * std::numbers::pi * g->weights[j] * s * s *
               angular_quadrature(mu, g->nodes[i], s) * h[j];
    }
    acc += four_pi * g->nodes[i] * g->nodes[i] * g->weights[i] * f[i] * inner;
  }
  return acc;
}

// (|.|^{-mu} * e^{-|.|^2})(r) through the Fourier side:
//   conv(r) = (1/(2 pi^2)) int_0^inf xi^2 K(xi) e^{-xi^2/4} pi^{3/2}
//             sin(xi r)/(xi r) dxi,
// with K(xi) = 2^{3-mu} pi^{3/2} Gamma((3-mu)/2)/Gamma(mu/2) xi^{mu-3}.
// Substituting xi = z^2 removes the endpoint singularity for mu < 1.
inline double fourier_gaussian_convolution(double mu, double r) {
  using choquard::gamma_fn;
  const double pi = std::numbers::pi;
  const double coeff = std::pow(2.0, 3.0 - mu) * std::pow(pi, 3.0) *
                       gamma_fn(1.5 - 0.5 * mu) / gamma_fn(0.5 * mu) /
                       (2.0 * pi * pi);
  auto integrand = [&](double z) {
    const double xi = z * z;
    if (xi == 0.0) return 0.0;
    const double sinc = r == 0.0 ? 1.0 : std::sin(xi * r) / (xi * r);
    return 2.0 * z * std::pow(xi, mu - 1.0) * std::exp(-0.25 * xi * xi) * sinc;
  };
  return coeff * choquard::adaptive_integrate(integrand, 0.0, 9.0, 1e-12);
}

// Deterministic smooth radial test fields (mixtures of Gaussian bumps).
inline choquard::Field random_field(const choquard::GridPtr& g, std::mt19937_64& rng,
                                    bool nonnegative = true) {
  auto uni = [&rng](double lo, double hi) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * x;
  };
  const int bumps = 1 + static_cast<int>(rng() % 3);
  std::vector<double> amp(bumps), center(bumps), width(bumps);
  for (int b = 0; b < bumps; ++b) {
    amp[b] = uni(0.2, 1.5) * (nonnegative || (rng() & 1) ? 1.0 : -1.0);
    center[b] = uni(0.0, 4.0);
    width[b] = uni(0.6, 2.5);
  }
  return choquard::sample(g, [&](double r) {
    double v = 0.0;
    for (int b = 0; b < bumps; ++b)
      v += amp[b] * std::exp(-(r - center[b]) * (r - center[b]) /
                             (2.0 * width[b] * width[b]));
    return v;
  });
}

}  // namespace oracle
