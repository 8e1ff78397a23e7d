#pragma once

#include <span>
#include <vector>

#include "choquard/grid.hpp"

namespace choquard {

/// Angular factor of the radial Riesz convolution: for |x| = r,
///   (|.|^{-mu} * f)(x) = 2 pi int_0^inf s^2 A_mu(r, s) f(s) ds,
/// where A_mu(r,s) = int_{-1}^{1} (r^2 + s^2 - 2 r s t)^{-mu/2} dt
///                 = ((r+s)^{2-mu} - |r-s|^{2-mu}) / ((2-mu) r s),
/// and A_2(r,s) = log((r+s)/|r-s|) / (r s).
double angular_kernel(double mu, double r, double s);

/// Exact integral of s^2 A_mu(r, s) over s in [lo, hi] (antiderivative in
/// closed form; valid when the interval does or does not contain s = r).
double angular_kernel_cell(double mu, double r, double lo, double hi);

/// Dense discretization of f -> |.|^{-mu} * f on a radial grid.
///
/// The underlying bilinear form B[i][j] (so that the double Riesz energy is
/// f^T B g) is symmetric by construction; entries within one cell of the
/// diagonal use the exact cell integral of A_mu, which keeps second-order
/// accuracy through the weak |r-s|^{2-mu} singularity. The stored matrix is
/// K[i][j] = B[i][j] / (4 pi r_i^2 w_i), so that (K f)_i approximates the
/// convolution value at r_i.
class RieszKernel {
 public:
  RieszKernel(GridPtr grid, double mu, std::vector<double> matrix)
      : grid_(std::move(grid)), mu_(mu), matrix_(std::move(matrix)) {}

  double mu() const { return mu_; }
  const GridPtr& grid() const { return grid_; }
  std::span<const double> row(std::size_t i) const {
    return {matrix_.data() + i * grid_->n, grid_->n};
  }

 private:
  GridPtr grid_;
  double mu_;
  std::vector<double> matrix_;  // n x n, row-major
};

RieszKernel build_kernel(const GridPtr& grid, double mu);

/// g_i = sum_j K[i][j] f_j; nonnegative whenever f is.
Field riesz_apply(const RieszKernel& kernel, const Field& f);

/// int f(x) (|.|^{-mu} * g)(x) dx; symmetric in (f, g).
double double_energy(const RieszKernel& kernel, const Field& f, const Field& g);

/// Same, reusing an already computed kg = riesz_apply(kernel, g).
double double_energy_with(const RieszKernel& kernel, const Field& f, const Field& kg);

}  // namespace choquard
