#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "choquard/bubbles.hpp"
#include "choquard/config.hpp"
#include "choquard/constants.hpp"
#include "choquard/semiclassical.hpp"
#include "choquard/solver.hpp"

namespace {

using nlohmann::json;
using namespace choquard;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw std::invalid_argument("empty eps list");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << text;
}

int run_constants(double mu, bool as_json) {
  const SharpConstants c = sharp_constants(mu);
  if (as_json) {
    json j{{"mu", c.mu},
           {"c_hls", c.c_hls},
           {"s_sobolev", c.s_sobolev},
           {"s_hl", c.s_hl},
           {"critical_level", c.critical_level}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("mu             = %.17g\n", c.mu);
    std::printf("c_hls          = %.17g\n", c.c_hls);
    std::printf("s_sobolev      = %.17g\n", c.s_sobolev);
    std::printf("s_hl           = %.17g\n", c.s_hl);
    std::printf("critical_level = %.17g\n", c.critical_level);
  }
  return 0;
}

int run_ground_state(const RunConfig& cfg, const std::string& out,
                     const std::string& profile) {
  const GridPtr grid = make_grid(cfg.grid.r_max, cfg.grid.n);
  const RieszKernel kernel = build_kernel(grid, cfg.params.mu);
  const SolveReport rep =
      ground_state(cfg.params, kernel, cfg.solver, gaussian_init(grid, 2.0));
  json j{{"energy", rep.energy},
         {"grad_norm", rep.grad_norm},
         {"nehari_residual", rep.nehari_residual},
         {"pohozaev_residual", rep.pohozaev_residual},
         {"iterations", rep.iterations},
         {"decay_rate", rep.decay_rate},
         {"max_point", rep.max_point},
         {"converged", rep.converged}};
  write_text(out, j.dump(2) + "\n");
  if (!profile.empty()) {
    std::ofstream os(profile);
    if (!os) throw std::runtime_error("cannot open profile file: " + profile);
    write_csv(os, rep.field);
  }
  return rep.converged ? 0 : 1;
}

int run_bubble(double mu, double q, double delta, const std::vector<double>& eps,
               const std::string& out) {
  const AsymptoticFit fit = verify_convolution_estimates(delta, mu, q, eps);
  std::string csv = "eps,integral,remainder,target_order,fitted_order\n";
  for (std::size_t i = 0; i < fit.eps_samples.size(); ++i) {
    csv += fmt(fit.eps_samples[i]) + "," + fmt(fit.integrals[i]) + "," +
           fmt(fit.remainders[i]) + "," + fmt(fit.exponent_target) + "," +
           fmt(fit.exponent_fitted) + "\n";
  }
  write_text(out, csv);
  return 0;
}

int run_sweep(const RunConfig& cfg, const std::string& problem,
              const std::vector<double>& eps, const std::string& out) {
  if (!cfg.potential)
    throw std::runtime_error("sweep requires a potential section in the config");
  const SweepProblem prob = problem == "scc1" ? SweepProblem::scc1 : SweepProblem::scc2;
  const GridPtr grid = make_grid(cfg.grid.r_max, cfg.grid.n);
  const RieszKernel kernel = build_kernel(grid, cfg.params.mu);
  const SweepResult res =
      concentration_sweep(prob, *cfg.potential, eps, cfg.params, kernel, cfg.solver);
  std::string csv = "eps,energy,max_point,decay_beta,limit_gap,converged\n";
  for (const SweepRow& r : res.rows) {
    csv += fmt(r.eps) + "," + fmt(r.energy) + "," + fmt(r.max_point) + "," +
           fmt(r.decay_beta) + "," + fmt(r.limit_gap) + "," +
           (r.converged ? "1" : "0") + "\n";
  }
  write_text(out, csv);
  return 0;
}

// Deterministic random smooth fields: mixtures of radial Gaussians.
Field random_smooth_field(const GridPtr& grid, std::mt19937_64& rng) {
  auto uni = [&rng](double lo, double hi) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * x;
  };
  const int bumps = 1 + static_cast<int>(rng() % 3);
  std::vector<double> amp(bumps), center(bumps), width(bumps);
  for (int b = 0; b < bumps; ++b) {
    amp[b] = uni(0.2, 1.5);
    center[b] = uni(0.0, 4.0);
    width[b] = uni(0.6, 2.5);
  }
  return sample(grid, [&](double r) {
    double v = 0.0;
    for (int b = 0; b < bumps; ++b)
      v += amp[b] * std::exp(-(r - center[b]) * (r - center[b]) /
                             (2.0 * width[b] * width[b]));
    return v;
  });
}

struct VerifyReporter {
  bool all_ok = true;
  std::string first_fail;

  void row(const std::string& name, bool ok, double value, double bound) {
    std::printf("%-44s %s  (value %.6g, bound %.6g)\n", name.c_str(),
                ok ? "PASS" : "FAIL", value, bound);
    if (!ok && all_ok) {
      all_ok = false;
      first_fail = name;
    }
  }
};

int run_verify(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  VerifyReporter rep;

  // Sharp-constant identity.
  for (double mu : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    const double lhs = shl_constant(mu) * std::pow(hls_constant(mu), 1.0 / (6.0 - mu));
    const double rel = std::abs(lhs - sobolev_constant()) / sobolev_constant();
    rep.row("sharp-constant identity mu=" + std::to_string(mu), rel < 1e-12, rel, 1e-12);
  }

  const GridPtr grid = make_grid(20.0, 1024);
  ProblemParams params = cfg.params;
  const RieszKernel kernel = build_kernel(grid, params.mu);
  const Functional func(params, kernel);

  // Gradient vs central differences.
  {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Field u = random_smooth_field(grid, rng);
      const Field phi = random_smooth_field(grid, rng);
      const Field grad = func.gradient(u);
      double ip = 0.0;
      for (std::size_t i = 0; i < grid->n; ++i)
        ip += grid->volume_weight(i) * grad[i] * phi[i];
      const double h = 1e-6;
      Field up = u, um = u;
      for (std::size_t i = 0; i < grid->n; ++i) {
        up[i] += h * phi[i];
        um[i] -= h * phi[i];
      }
      const double fd = (func.energy(up).total - func.energy(um).total) / (2.0 * h);
      worst = std::max(worst, std::abs(ip - fd) / std::max(1.0, std::abs(fd)));
    }
    rep.row("energy gradient vs finite differences", worst < 1e-5, worst, 1e-5);
  }

  // HLS inequality.
  for (double mu : {0.5, 1.0, 1.5, 2.0, 2.5}) {
    const RieszKernel k_mu = build_kernel(grid, mu);
    const double c_mu = hls_constant(mu);
    double worst = -1.0;
    for (int k = 0; k < 20; ++k) {
      const Field u = random_smooth_field(grid, rng);
      Field f(grid);
      double l6 = 0.0;
      for (std::size_t i = 0; i < grid->n; ++i) {
        f[i] = std::pow(std::abs(u[i]), 6.0 - mu);
        l6 += grid->volume_weight(i) * std::pow(u[i], 6.0);
      }
      const double lhs = double_energy(k_mu, f, f);
      const double rhs = c_mu * std::pow(l6, (6.0 - mu) / 3.0);
      worst = std::max(worst, lhs / rhs - 1.0);
    }
    rep.row("HLS inequality mu=" + std::to_string(mu), worst < 1e-3, worst, 1e-3);
  }

  // Nehari projection idempotence and scaling covariance.
  {
    double worst_t = 0.0, worst_s = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Field u = random_smooth_field(grid, rng);
      const NehariProjection p = nehari_project(func, u);
      const NehariProjection p2 = nehari_project(func, p.tu);
      worst_t = std::max(worst_t, std::abs(p2.t - 1.0));
      Field u2 = u;
      for (auto& v : u2.values) v *= 2.0;
      const NehariProjection p3 = nehari_project(func, u2);
      worst_s = std::max(worst_s, std::abs(2.0 * p3.t - p.t) / p.t);
    }
    rep.row("Nehari projection idempotence", worst_t < 1e-10, worst_t, 1e-10);
    rep.row("Nehari scaling covariance", worst_s < 1e-10, worst_s, 1e-10);
  }

  // Pohozaev residual of the projected critical extremal.
  {
    const GridPtr g200 = make_grid(200.0, 3000);
    const RieszKernel k200 = build_kernel(g200, params.mu);
    ProblemParams pc = params;
    pc.kappa = 0.0;
    pc.tau = 0.0;
    const Functional fc(pc, k200);
    const Field ut =
        boundary_taper(extremal_field(g200, ExtremalKind::U_tilde, params.mu), 0.5);
    const NehariProjection p = nehari_project(fc, ut);
    const EnergyBreakdown e = fc.energy(p.tu);
    const double rel = std::abs(e.pohozaev_residual) / e.kinetic;
    rep.row("Pohozaev residual on projected extremal", rel < 1e-3, rel, 1e-3);
  }

  std::printf("%s\n", rep.all_ok ? "verify: all checks passed"
                                 : ("verify: FAILED at " + rep.first_fail).c_str());
  return rep.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states and semiclassical concentration for critical "
               "Choquard equations"};
  app.require_subcommand(0, 1);

  bool print_default = false;
  app.add_flag("--print-default-config", print_default,
               "print the default JSON config and exit");

  auto* c_const = app.add_subcommand("constants", "sharp constants at a given mu");
  double mu = 1.0;
  bool as_json = false;
  c_const->add_option("--mu", mu, "Riesz exponent in (0,3)")->required();
  c_const->add_flag("--json", as_json, "emit a JSON object");

  auto* c_gs = app.add_subcommand("ground-state", "autonomous ground-state solve");
  std::string config_path, out_path, profile_path;
  c_gs->add_option("--config", config_path, "JSON config file")->required();
  c_gs->add_option("--out", out_path, "report JSON output path");
  c_gs->add_option("--profile", profile_path, "profile CSV output path");

  auto* c_bub = app.add_subcommand("bubble", "bubble-family convolution estimates");
  double b_mu = 1.0, b_q = 4.5, b_delta = 5.0;
  std::string b_eps = "0.2,0.1,0.05,0.025", b_out;
  c_bub->add_option("--mu", b_mu)->required();
  c_bub->add_option("--q", b_q)->required();
  c_bub->add_option("--delta", b_delta)->required();
  c_bub->add_option("--eps", b_eps, "comma-separated decreasing list");
  c_bub->add_option("--out", b_out, "CSV output path");

  auto* c_sweep = app.add_subcommand("sweep", "semiclassical concentration sweep");
  std::string s_problem, s_config, s_eps = "0.4,0.2,0.1", s_out;
  c_sweep->add_option("--problem", s_problem, "scc1 or scc2")
      ->required()
      ->check(CLI::IsMember({"scc1", "scc2"}));
  c_sweep->add_option("--config", s_config, "JSON config file")->required();
  c_sweep->add_option("--eps", s_eps, "comma-separated decreasing list");
  c_sweep->add_option("--out", s_out, "CSV output path");

  auto* c_verify = app.add_subcommand("verify", "run the invariant suite");
  std::string v_config;
  c_verify->add_option("--config", v_config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (print_default) {
      std::cout << config_to_json(default_config()).dump(2) << "\n";
      return 0;
    }
    if (*c_const) return run_constants(mu, as_json);
    if (*c_gs) return run_ground_state(load_config(config_path), out_path, profile_path);
    if (*c_bub) return run_bubble(b_mu, b_q, b_delta, parse_eps_list(b_eps), b_out);
    if (*c_sweep)
      return run_sweep(load_config(s_config), s_problem, parse_eps_list(s_eps), s_out);
    if (*c_verify)
      return run_verify(v_config.empty() ? default_config() : load_config(v_config));
    std::cout << app.help();
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
