#include "choquard/riesz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "choquard/util.hpp"

namespace choquard {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;

void check_mu(double mu) {
  if (!(mu > 0.0) || !(mu < 3.0))
    throw std::domain_error("riesz: mu must lie in (0, 3)");
}

// Series in rho = min/max, removing the cancellation of
// (M+m)^a - (M-m)^a when rho is tiny. Branch-free in mu:
//   A = 2 M^{-mu} (1 + c2 rho^2 + c4 rho^4 + O(rho^6)).
double angular_kernel_series(double mu, double m, double M) {
  const double rho = m / M;
  const double rho2 = rho * rho;
  const double c2 = mu * (mu - 1.0) / 6.0;
  const double c4 = mu * (mu - 1.0) * (mu + 1.0) * (mu + 2.0) / 120.0;
  return 2.0 * std::pow(M, -mu) * (1.0 + rho2 * (c2 + rho2 * c4));
}

// Antiderivative of s (r+s)^a.
double anti_plus(double a, double r, double s) {
  const double p = r + s;
  return std::pow(p, a + 2.0) / (a + 2.0) - r * std::pow(p, a + 1.0) / (a + 1.0);
}

// Antiderivative of s |r-s|^a, valid piecewise on either side of s = r.
double anti_minus(double a, double r, double s) {
  if (s < r) {
    const double q = r - s;
    return -r * std::pow(q, a + 1.0) / (a + 1.0) + std::pow(q, a + 2.0) / (a + 2.0);
  }
  const double q = s - r;
  return std::pow(q, a + 2.0) / (a + 2.0) + r * std::pow(q, a + 1.0) / (a + 1.0);
}

// Antiderivatives of s log(r+s) and s log|r-s|.
double anti_log_plus(double r, double s) {
  return 0.5 * (s * s - r * r) * std::log(r + s) - 0.25 * s * s + 0.5 * r * s;
}

double anti_log_minus(double r, double s) {
  const double q = std::abs(s - r);
  const double lg = q == 0.0 ? 0.0 : 0.5 * (s * s - r * r) * std::log(q);
  return lg - 0.25 * s * s - 0.5 * r * s;
}

}  // namespace

double angular_kernel(double mu, double r, double s) {
  check_mu(mu);
  const double m = std::min(r, s);
  const double M = std::max(r, s);
  if (m <= 0.0) throw std::invalid_argument("angular_kernel: radii must be positive");
  if (m < 1e-3 * M) return angular_kernel_series(mu, m, M);
  if (mu == 2.0) return std::log((r + s) / std::abs(r - s)) / (r * s);
  const double a = 2.0 - mu;
  return (std::pow(r + s, a) - std::pow(std::abs(r - s), a)) / (a * r * s);
}

double angular_kernel_cell(double mu, double r, double lo, double hi) {
  check_mu(mu);
  if (!(0.0 <= lo && lo < hi)) throw std::invalid_argument("angular_kernel_cell: bad interval");
  if (mu == 2.0) {
    return (anti_log_plus(r, hi) - anti_log_plus(r, lo) -
            (anti_log_minus(r, hi) - anti_log_minus(r, lo))) /
           r;
  }
  const double a = 2.0 - mu;
  double minus;
  if (lo < r && r < hi) {
    // Split at the kink; both one-sided limits of the antiderivative are 0.
    minus = (anti_minus(a, r, hi) - 0.0) + (0.0 - anti_minus(a, r, lo));
  } else {
    minus = anti_minus(a, r, hi) - anti_minus(a, r, lo);
  }
  const double plus = anti_plus(a, r, hi) - anti_plus(a, r, lo);
  return (plus - minus) / (a * r);
}

RieszKernel build_kernel(const GridPtr& grid, double mu) {
  check_mu(mu);
  const std::size_t n = grid->n;
  const double h = grid->h;
  const auto& r = grid->nodes;
  std::vector<double> matrix(n * n);

  // B[i][j] = c_i K[i][j] with c_i = 4 pi r_i^2 h must be exactly symmetric;
  // every expression below is symmetric under i <-> j term by term. Cells
  // within kBand of the diagonal use the exact integral of A_mu: the
  // |r-s|^{2-mu} kink otherwise degrades the composite rule to O(h^{4-mu})
  // for mu > 2.
  constexpr std::size_t kBand = 8;
  parallel_for(n, [&](std::size_t i) {
    double* row = matrix.data() + i * n;
    const double ci = kFourPi * r[i] * r[i] * h;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      double bij;
      if (d > kBand) {
        const double rij = r[i] * r[j];
        bij = 8.0 * std::numbers::pi * std::numbers::pi * h * h * (rij * rij) *
              angular_kernel(mu, r[i], r[j]);
      } else {
        const double half = 0.5 * h;
        const double cell_i = angular_kernel_cell(mu, r[j], r[i] - half, r[i] + half);
        const double cell_j = angular_kernel_cell(mu, r[i], r[j] - half, r[j] + half);
        bij = 0.5 * (8.0 * std::numbers::pi * std::numbers::pi * h) *
              ((r[i] * r[i]) * cell_j + (r[j] * r[j]) * cell_i);
      }
      row[j] = bij / ci;
    }
  });
  return RieszKernel(grid, mu, std::move(matrix));
}

Field riesz_apply(const RieszKernel& kernel, const Field& f) {
  if (f.grid != kernel.grid())
    throw std::invalid_argument("riesz_apply: field grid does not match kernel grid");
  const std::size_t n = kernel.grid()->n;
  Field out(f.grid);
  parallel_for(n, [&](std::size_t i) {
    out[i] = pairwise_dot(kernel.row(i), f.values);
  });
  return out;
}

double double_energy(const RieszKernel& kernel, const Field& f, const Field& g) {
  const Field kg = riesz_apply(kernel, g);
  return double_energy_with(kernel, f, kg);
}

double double_energy_with(const RieszKernel& kernel, const Field& f, const Field& kg) {
  if (f.grid != kernel.grid() || kg.grid != kernel.grid())
    throw std::invalid_argument("double_energy: field grid does not match kernel grid");
  const RadialGrid& g = *kernel.grid();
  return pairwise_sum(g.n, [&](std::size_t i) {
    return g.volume_weight(i) * f[i] * kg[i];
  });
}

}  // namespace choquard
