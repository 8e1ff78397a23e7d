#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace choquard {

/// Pairwise (cascade) summation with a fixed association order, so results
/// do not depend on caller threading or accumulation order.
double pairwise_sum(std::span<const double> x);

/// Pairwise sum of f(i) for i in [0, n).
double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& f);

/// Dot product with pairwise accumulation.
double pairwise_dot(std::span<const double> a, std::span<const double> b);

/// Gamma function via the Lanczos approximation (g=7, 9 coefficients),
/// accurate to ~15 significant digits for x > 0.
double gamma_fn(double x);

/// Root of f on [lo, hi] (f(lo), f(hi) of opposite sign) by bisection,
/// to relative tolerance rel_tol in the abscissa.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 1e-13, int max_iter = 200);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-10, int max_depth = 40);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares straight line y = intercept + slope * x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Solves the tridiagonal system with diagonals (lower, diag, upper) in place
/// semantics: returns x with A x = rhs. Thomas algorithm; diag must be
/// nonsingular after elimination.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

/// Worker-thread cap: CHOQUARD_THREADS if set, else hardware concurrency.
unsigned worker_threads();

/// Runs body(i) for i in [0, n), split across worker threads. Each index is
/// processed exactly once; the result must not depend on the partition.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace choquard
