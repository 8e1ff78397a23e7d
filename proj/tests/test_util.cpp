#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "choquard/util.hpp"

using namespace choquard;

TEST_CASE("pairwise sum matches plain accumulation") {
  std::vector<double> xs(10001);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::sin(0.1 * i) / (i + 1.0);
  double plain = 0.0;
  for (double v : xs) plain += v;
  CHECK(pairwise_sum(xs) == doctest::Approx(plain).epsilon(1e-13));
}

TEST_CASE("gamma function reference values") {
  const double pi = std::numbers::pi;
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(6.0) == doctest::Approx(120.0).epsilon(1e-14));
  // Gamma(1/4) and Gamma(3/4), literature values.
  CHECK(gamma_fn(0.25) == doctest::Approx(3.6256099082219083).epsilon(1e-13));
  CHECK(gamma_fn(0.75) == doctest::Approx(1.2254167024651777).epsilon(1e-13));
  // Reflection consistency: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  for (double x : {0.1, 0.3, 0.45}) {
    CHECK(gamma_fn(x) * gamma_fn(1.0 - x) ==
          doctest::Approx(pi / std::sin(pi * x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS((void)gamma_fn(0.0), std::domain_error);
}

TEST_CASE("adaptive integration") {
  const double got = adaptive_integrate([](double x) { return std::exp(-x * x); },
                                        0.0, 10.0, 1e-12);
  CHECK(got == doctest::Approx(0.5 * std::sqrt(std::numbers::pi)).epsilon(1e-11));
  CHECK(adaptive_integrate([](double x) { return x * x * x; }, -1.0, 1.0) ==
        doctest::Approx(0.0));
}

TEST_CASE("bisection") {
  const double root = bisect([](double t) { return t * t - 2.0; }, 0.0, 2.0, 1e-14);
  CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK_THROWS_AS((void)bisect([](double t) { return 1.0 + t * t; }, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("line fit recovers exact linear data") {
  std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 - 0.5 * v);
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tridiagonal solve against dense check") {
  const std::size_t n = 50;
  std::vector<double> lower(n - 1, -1.0), upper(n - 1, -1.0), diag(n, 2.5), rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = std::cos(0.3 * i);
  const auto x = solve_tridiagonal(lower, diag, upper, rhs);
  for (std::size_t i = 0; i < n; ++i) {
    double lhs = 2.5 * x[i];
    if (i > 0) lhs -= x[i - 1];
    if (i + 1 < n) lhs -= x[i + 1];
    CHECK(lhs == doctest::Approx(rhs[i]).epsilon(1e-12));
  }
}
