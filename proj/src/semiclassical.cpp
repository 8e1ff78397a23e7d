#include "choquard/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

namespace choquard {

namespace {

Functional scc1_functional(double eps, const Potential& q,
                           const ProblemParams& params, const RieszKernel& kernel) {
  if (q.kind == PotentialKind::gaussian_well)
    throw std::invalid_argument("solve_scc1: Q must be gaussian_bump or constant");
  q.validate();
  Functional f(params, kernel);
  f.set_weight_field(
      sample(kernel.grid(), [&](double r) { return q.value(eps * r); }));
  return f;
}

Functional scc2_functional(double eps, const Potential& v,
                           const ProblemParams& params, const RieszKernel& kernel) {
  if (v.kind == PotentialKind::gaussian_bump)
    throw std::invalid_argument("solve_scc2: V must be gaussian_well or constant");
  v.validate();
  Functional f(params, kernel);
  f.set_kappa_field(
      sample(kernel.grid(), [&](double r) { return v.value(eps * r); }));
  return f;
}

double h1_distance(const Field& a, const Field& b) {
  Field diff = a;
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= b[i];
  return std::sqrt(h1_norm_sq(diff, 1.0));
}

}  // namespace

void Potential::validate() const {
  if (!(base > 0.0)) throw std::invalid_argument("Potential: base must be positive");
  if (kind != PotentialKind::constant) {
    if (!(amplitude > 0.0))
      throw std::invalid_argument("Potential: amplitude must be positive");
    if (!(width > 0.0)) throw std::invalid_argument("Potential: width must be positive");
  }
}

double Potential::value(double r) const {
  switch (kind) {
    case PotentialKind::constant:
      return base;
    case PotentialKind::gaussian_well:
      return base + amplitude * (1.0 - std::exp(-(r / width) * (r / width)));
    case PotentialKind::gaussian_bump:
      return base + amplitude * std::exp(-(r / width) * (r / width));
  }
  throw std::logic_error("Potential: unknown kind");
}

double Potential::center_value() const {
  return kind == PotentialKind::gaussian_bump ? base + amplitude : base;
}

double Potential::limit_value() const {
  return kind == PotentialKind::gaussian_well ? base + amplitude : base;
}

PotentialKind potential_kind_from_string(const std::string& s) {
  if (s == "gaussian_well") return PotentialKind::gaussian_well;
  if (s == "gaussian_bump") return PotentialKind::gaussian_bump;
  if (s == "constant") return PotentialKind::constant;
  throw std::invalid_argument("unknown potential kind: " + s);
}

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::gaussian_well: return "gaussian_well";
    case PotentialKind::gaussian_bump: return "gaussian_bump";
    case PotentialKind::constant: return "constant";
  }
  return "constant";
}

SolveReport solve_scc1(double eps, const Potential& q, const ProblemParams& params,
                       const RieszKernel& kernel, const SolverConfig& config,
                       const Field& init) {
  return ground_state(scc1_functional(eps, q, params, kernel), config, init);
}

SolveReport solve_scc2(double eps, const Potential& v, const ProblemParams& params,
                       const RieszKernel& kernel, const SolverConfig& config,
                       const Field& init) {
  return ground_state(scc2_functional(eps, v, params, kernel), config, init);
}

double truncated_level(double eps, const Potential& q, double d,
                       const ProblemParams& params, const RieszKernel& kernel,
                       const SolverConfig& config, const Field& init) {
  if (q.kind == PotentialKind::gaussian_well)
    throw std::invalid_argument("truncated_level: Q must be gaussian_bump or constant");
  q.validate();
  const double lo = q.kind == PotentialKind::constant ? q.base : q.base;
  const double hi = q.center_value();
  if (!(d >= lo && d <= hi))
    throw std::invalid_argument("truncated_level: d outside the potential range");
  Functional f(params, kernel);
  f.set_weight_field(sample(kernel.grid(), [&](double r) {
    return std::min(d, q.value(eps * r));
  }));
  return ground_state(f, config, init).energy;
}

SweepResult concentration_sweep(SweepProblem problem, const Potential& pot,
                                std::span<const double> eps_list,
                                const ProblemParams& params,
                                const RieszKernel& kernel,
                                const SolverConfig& config) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("concentration_sweep: need >= 3 eps values");
  for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
    if (!(eps_list[i] > eps_list[i + 1]))
      throw std::invalid_argument("concentration_sweep: eps must be decreasing");

  const Field init = gaussian_init(kernel.grid(), 2.0);

  // Limiting autonomous problem: Q folds its maximum into the nonlinear
  // coefficients, V its minimum into kappa.
  ProblemParams ref = params;
  if (problem == SweepProblem::scc1) {
    ref.nu = params.nu * pot.center_value();
    ref.tau = params.tau * pot.center_value();
  } else {
    ref.kappa = pot.center_value();
  }
  SweepResult result;
  result.reference_level = ground_state(ref, kernel, config, init).energy;

  const Field* prev = nullptr;
  std::vector<Field> fields;
  fields.reserve(eps_list.size());
  for (const double eps : eps_list) {
    SweepRow row;
    row.eps = eps;
    try {
      const SolveReport rep =
          problem == SweepProblem::scc1
              ? solve_scc1(eps, pot, params, kernel, config, init)
              : solve_scc2(eps, pot, params, kernel, config, init);
      row.energy = rep.energy;
      row.max_point = rep.max_point;
      row.decay_beta = rep.decay_rate;
      row.limit_gap = rep.energy - result.reference_level;
      row.converged = rep.converged;
      fields.push_back(rep.field);
      if (prev) row.h1_dist_prev = h1_distance(fields.back(), *prev);
      prev = &fields.back();
    } catch (const std::runtime_error&) {
      row.converged = false;
    }
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace choquard
