#include "choquard/grid.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "choquard/util.hpp"

namespace choquard {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

double RadialGrid::volume_weight(std::size_t i) const {
  return kFourPi * nodes[i] * nodes[i] * weights[i];
}

Field::Field(GridPtr g, double fill) : grid(std::move(g)) {
  values.assign(grid->n, fill);
}

GridPtr make_grid(double r_max, std::size_t n) {
  if (!(r_max > 0.0) || n < 16)
    throw std::invalid_argument("make_grid: need r_max > 0 and n >= 16");
  auto g = std::make_shared<RadialGrid>();
  g->r_max = r_max;
  g->n = n;
  g->h = r_max / static_cast<double>(n + 1);
  g->nodes.resize(n);
  g->weights.assign(n, g->h);
  for (std::size_t i = 0; i < n; ++i) g->nodes[i] = static_cast<double>(i + 1) * g->h;
  return g;
}

double integrate(const Field& f) {
  const RadialGrid& g = *f.grid;
  const double interior =
      pairwise_sum(g.n, [&](std::size_t i) { return g.volume_weight(i) * f[i]; });
  // Trapezoid endpoint at r_max with the value linearly extrapolated from the
  // last two nodes: exact-order for fields that do not vanish there, and
  // O(h^3 R^2)-negligible for admissible decaying fields. The r = 0 endpoint
  // vanishes against r^2.
  const double f_end = g.n >= 2 ? 2.0 * f[g.n - 1] - f[g.n - 2] : f[g.n - 1];
  const double endpoint = 0.5 * g.h * kFourPi * g.r_max * g.r_max * f_end;
  return interior + endpoint;
}

double l2_norm_sq(const Field& f) {
  const RadialGrid& g = *f.grid;
  return pairwise_sum(g.n,
                      [&](std::size_t i) { return g.volume_weight(i) * f[i] * f[i]; });
}

Field radial_derivative(const Field& f, bool dirichlet_end) {
  const RadialGrid& g = *f.grid;
  const std::size_t n = g.n;
  const double h = g.h;
  Field d(f.grid);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  if (n >= 3) {
    // r=0 ghost from the even-parabola through (r1, r2): u(0) = (4u1 - u2)/3.
    const double u0 = (4.0 * f[0] - f[1]) / 3.0;
    d[0] = (f[1] - u0) / (2.0 * h);
    d[n - 1] = dirichlet_end
                   ? (0.0 - f[n - 2]) / (2.0 * h)
                   : (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  }
  return d;
}

double h1_norm_sq(const Field& f, double kappa) {
  const RadialGrid& g = *f.grid;
  const Field d = radial_derivative(f);
  return pairwise_sum(g.n, [&](std::size_t i) {
    return g.volume_weight(i) * (d[i] * d[i] + kappa * f[i] * f[i]);
  });
}

double dirichlet_form(const Field& f, const Field& g) {
  const RadialGrid& gr = *f.grid;
  const std::size_t n = gr.n;
  const double h = gr.h;
  // v = r*f with v(0) = v(r_max) = 0; int |grad f|^2 = 4 pi int (v')^2 dr.
  auto vf = [&](std::size_t j) { return j == 0 || j == n + 1 ? 0.0 : gr.nodes[j - 1] * f[j - 1]; };
  auto vg = [&](std::size_t j) { return j == 0 || j == n + 1 ? 0.0 : gr.nodes[j - 1] * g[j - 1]; };
  return kFourPi / h * pairwise_sum(n + 1, [&](std::size_t j) {
           return (vf(j + 1) - vf(j)) * (vg(j + 1) - vg(j));
         });
}

double dirichlet_energy(const Field& f) { return dirichlet_form(f, f); }

Field laplacian(const Field& f) {
  const RadialGrid& g = *f.grid;
  const std::size_t n = g.n;
  if (n < 3) throw std::invalid_argument("laplacian: need n >= 3");
  const double h2 = g.h * g.h;
  Field out(f.grid);
  for (std::size_t i = 0; i < n; ++i) {
    const double vm = i == 0 ? 0.0 : g.nodes[i - 1] * f[i - 1];
    const double v0 = g.nodes[i] * f[i];
    const double vp = i + 1 == n ? 0.0 : g.nodes[i + 1] * f[i + 1];
    out[i] = (vp - 2.0 * v0 + vm) / (h2 * g.nodes[i]);
  }
  return out;
}

Field helmholtz_solve(const Field& kappa, const Field& rhs) {
  const RadialGrid& g = *rhs.grid;
  const std::size_t n = g.n;
  const double h2 = g.h * g.h;
  // In v = r*x variables: (-v'' + kappa v) = r * rhs, Dirichlet ends.
  std::vector<double> lower(n - 1, -1.0 / h2), upper(n - 1, -1.0 / h2), diag(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = 2.0 / h2 + kappa[i];
    b[i] = g.nodes[i] * rhs[i];
  }
  const auto v = solve_tridiagonal(lower, diag, upper, b);
  Field out(rhs.grid);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[i] / g.nodes[i];
  return out;
}

Field boundary_taper(const Field& f, double fraction) {
  const RadialGrid& g = *f.grid;
  const double r0 = g.r_max * (1.0 - fraction);
  Field out = f;
  for (std::size_t i = 0; i < g.n; ++i) {
    const double r = g.nodes[i];
    if (r <= r0) continue;
    const double x = (r - r0) / (g.r_max - r0);
    out[i] *= 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  }
  return out;
}

void write_csv(std::ostream& os, const Field& f) {
  os << "r,value\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.grid->nodes[i], f[i]);
    os << buf;
  }
}

Field read_csv(std::istream& is, const GridPtr& g) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("r,value", 0) != 0)
    throw std::runtime_error("read_csv: missing r,value header");
  Field f(g);
  std::size_t i = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (i >= g->n) throw std::runtime_error("read_csv: more rows than grid nodes");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("read_csv: malformed row");
    f[i++] = std::stod(line.substr(comma + 1));
  }
  if (i != g->n) throw std::runtime_error("read_csv: row count does not match grid");
  return f;
}

}  // namespace choquard
