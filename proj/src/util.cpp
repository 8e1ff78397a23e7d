#include "choquard/util.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace choquard {

namespace {

constexpr std::size_t kPairwiseBase = 64;

double pairwise_sum_range(const double* x, std::size_t n) {
  if (n <= kPairwiseBase) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(x, half) + pairwise_sum_range(x + half, n - half);
}

double pairwise_sum_fn(std::size_t lo, std::size_t hi,
                       const std::function<double(std::size_t)>& f) {
  const std::size_t n = hi - lo;
  if (n <= kPairwiseBase) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_sum_fn(lo, mid, f) + pairwise_sum_fn(mid, hi, f);
}

double pairwise_dot_range(const double* a, const double* b, std::size_t n) {
  if (n <= kPairwiseBase) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_dot_range(a, b, half) +
         pairwise_dot_range(a + half, b + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> x) {
  return pairwise_sum_range(x.data(), x.size());
}

double pairwise_sum(std::size_t n, const std::function<double(std::size_t)>& f) {
  return n == 0 ? 0.0 : pairwise_sum_fn(0, n, f);
}

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("pairwise_dot: size mismatch");
  return pairwise_dot_range(a.data(), b.data(), a.size());
}

double gamma_fn(double x) {
  // Lanczos, g = 7, 9 coefficients (Godfrey/Pugh tabulation).
  static constexpr double g = 7.0;
  static constexpr double coeff[9] = {
      0.99999999999980993,   676.5203681218851,    -1259.1392167224028,
      771.32342877765313,    -176.61502916214059,  12.507343278686905,
      -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: nonpositive integer argument");
  if (x < 0.5) {
    // Reflection formula.
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  x -= 1.0;
  double a = coeff[0];
  for (int i = 1; i < 9; ++i) a += coeff[i] / (x + i);
  const double t = x + g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * std::abs(mid)) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double m,
               double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double m,
                     double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, lm, m, fa, flm, fm);
  const double right = simpson(f, m, rm, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(f, a, m, b, fa, fm, fb);
  return adaptive_step(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matching points");
  const double n = static_cast<double>(x.size());
  const double sx = pairwise_sum(x);
  const double sy = pairwise_sum(y);
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n - 1 || upper.size() != n - 1 || rhs.size() != n)
    throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");
  std::vector<double> c(n - 1), d(n);
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i - 1] * c[i - 1];
    if (i < n - 1) c[i] = upper[i] / m;
    d[i] = (rhs[i] - lower[i - 1] * d[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("CHOQUARD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned nthreads = std::min<std::size_t>(worker_threads(), n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (unsigned t = 0; t < nthreads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace choquard
