#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

namespace choquard {

/// Uniform radial discretization of [0, r_max] for functions on R^3.
/// Interior nodes r_i = i*h, i = 1..n, h = r_max/(n+1). With the implicit
/// values u(0) finite and u(r_max) = 0, the composite trapezoid rule for
/// int_{R^3} f = int 4 pi r^2 f(r) dr reduces to weight h at every node
/// (both endpoint contributions vanish against r^2 resp. the Dirichlet
/// condition).
struct RadialGrid {
  double r_max = 0.0;
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> nodes;    // r_i, strictly increasing in (0, r_max)
  std::vector<double> weights;  // quadrature weights w_i (all h)

  /// 4 pi r_i^2 w_i, the volume element at node i.
  double volume_weight(std::size_t i) const;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Sampled radial function u(r_i). Implicit Dirichlet value u(r_max) = 0.
struct Field {
  GridPtr grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(GridPtr g, double fill = 0.0);

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

GridPtr make_grid(double r_max, std::size_t n);

/// Samples f(r) at the grid nodes.
template <class F>
Field sample(const GridPtr& g, F&& f) {
  Field out(g);
  for (std::size_t i = 0; i < g->n; ++i) out.values[i] = f(g->nodes[i]);
  return out;
}

/// int_{R^3} f, by the grid quadrature (deterministic pairwise order).
double integrate(const Field& f);

/// int |f|^2.
double l2_norm_sq(const Field& f);

/// int (|grad f|^2 + kappa |f|^2), with |grad f|^2 = (f')^2 by centered
/// differences (even extension at r=0, Dirichlet ghost at r_max).
double h1_norm_sq(const Field& f, double kappa);

/// Centered-difference radial derivative f'(r_i). With dirichlet_end the
/// last node uses the ghost value f(r_max) = 0; otherwise a second-order
/// one-sided stencil (for sampled functions that do not vanish at r_max).
Field radial_derivative(const Field& f, bool dirichlet_end = true);

/// int |grad f|^2 as the Dirichlet quadratic form of the v = r*f Laplacian,
/// i.e. the discretization whose exact nodal gradient is -2 Delta f. This is
/// the kinetic form used by the energy functional; it agrees with h1_norm_sq
/// to O(h^2).
double dirichlet_energy(const Field& f);

/// Bilinear version: the form underlying dirichlet_energy, so that
/// dirichlet_form(f, f) == dirichlet_energy(f).
double dirichlet_form(const Field& f, const Field& g);

/// Laplacian via the substitution v(r) = r*f(r): (Delta f)_i =
/// (v_{i+1} - 2 v_i + v_{i-1}) / (h^2 r_i), with v(0) = 0, v(r_max) = 0.
Field laplacian(const Field& f);

/// Solves (-Delta + kappa(r)) x = rhs with the same discretization
/// (tridiagonal in v = r*x). kappa must be positive.
Field helmholtz_solve(const Field& kappa, const Field& rhs);

/// Smoothly blends f to zero over the outer fraction of the domain, so that
/// sampled free-space profiles respect the grid's Dirichlet condition.
Field boundary_taper(const Field& f, double fraction = 0.1);

/// CSV with header "r,value", 17 significant digits.
void write_csv(std::ostream& os, const Field& f);
Field read_csv(std::istream& is, const GridPtr& g);

}  // namespace choquard
