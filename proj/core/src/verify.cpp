#include "mesoent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>

#include "mesoent/entanglement.hpp"
#include "mesoent/errors.hpp"
#include "mesoent/experiment.hpp"
#include "mesoent/mesoscopic.hpp"
#include "mesoent/microscopic_oracle.hpp"

namespace mesoent {

namespace {

template <typename F>
void for_each_point(const ParameterGrid& grid, F&& f) {
  for (const double e : grid.epsilons)
    for (const double t : grid.temperatures)
      for (const double g : grid.gammas) f(ModelParams::make(e, t, g));
}

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << "eps=" << p.epsilon() << " T=" << p.temperature() << " gamma=" << p.gamma();
  return os.str();
}

CheckResult finish(std::string name, double residual, double tolerance, std::string detail = {}) {
  return CheckResult{std::move(name), residual, tolerance, residual <= tolerance, std::move(detail)};
}

std::vector<double> uniform_times(double t_max, int steps) {
  std::vector<double> ts(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) ts[static_cast<std::size_t>(k)] = t_max * k / (steps - 1);
  return ts;
}

}  // namespace

ParameterGrid certification_grid() { return {{0.5, 1.0, 2.0}, {0.1, 0.5, 1.0, 5.0}, {0.0, 0.1, 0.25, 0.5}}; }

ParameterGrid grid_for(VerifyLevel level) {
  if (level == VerifyLevel::fast) return certification_grid();
  return {{0.25, 0.5, 1.0, 2.0, 3.0},
          {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0},
          {0.0, 0.05, 0.1, 0.25, 0.4, 0.5}};
}

CheckResult check_dissipation_spectrum(const std::vector<double>& gammas) {
  double worst = 0.0;
  for (const double g : gammas) {
    const auto d = build_dissipation_matrix(g);
    const std::array<double, 4> expected = {1.0 - 2.0 * std::abs(g), 1.0, 1.0, 1.0 + 2.0 * std::abs(g)};
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(d.eigenvalues[k] - expected[k]));
  }
  return finish("dissipation_spectrum", worst, tol::kStructural);
}

CheckResult check_dissipation_positivity(const std::vector<double>& gammas) {
  double worst = 0.0;
  std::string detail;
  for (const double g : gammas) {
    const auto d = build_dissipation_matrix(g);
    if (!d.positive_semidefinite) {
      worst = std::max(worst, -d.min_eigenvalue);
      std::ostringstream os;
      os << "gamma=" << g << ": min eigenvalue " << d.min_eigenvalue << ", not positive semidefinite";
      detail = os.str();
    }
  }
  return finish("dissipation_positivity", worst, tol::kStructural, detail);
}

CheckResult check_cp_boundary() {
  const bool at = build_dissipation_matrix(0.5).positive_semidefinite;
  const bool below = build_dissipation_matrix(0.5 - 1e-9).positive_semidefinite;
  const bool above = build_dissipation_matrix(0.5 + 1e-9).positive_semidefinite;
  const bool ok = at && below && !above;
  return CheckResult{"cp_boundary", ok ? 0.0 : 1.0, 0.0, ok,
                     ok ? "" : "positivity does not flip at gamma = 1/2"};
}

CheckResult check_hamiltonian_symmetry(const ParameterGrid& grid) {
  double worst = 0.0;
  for_each_point(grid, [&](const ModelParams& p) {
    const SiteOperator h = build_site_hamiltonian(p);
    for (const auto& v : build_lindblad_ops(p))
      worst = std::max(worst, commutator(h, v).matrix.cwiseAbs().maxCoeff());
  });
  return finish("hamiltonian_commutes_with_V", worst, tol::kStructural);
}

CheckResult check_thermal_invariance(const ParameterGrid& grid) {
  double worst = 0.0;
  std::string where;
  for_each_point(grid, [&](const ModelParams& p) {
    const Superoperator l = build_liouvillian(p);
    const ThermalSiteState st = build_thermal_state(p);
    double r = stationarity_residual(l, st);
    r = std::max(r, l.apply(pauli_product(0, 0)).matrix.cwiseAbs().maxCoeff());
    r = std::max(r, l.apply(build_site_hamiltonian(p)).matrix.cwiseAbs().maxCoeff());
    if (r > worst) {
      worst = r;
      where = describe(p);
    }
  });
  return finish("thermal_invariance", worst, tol::kStructural, where);
}

CheckResult check_generator_closure(const ParameterGrid& grid) {
  double worst = 0.0;
  std::string detail;
  for_each_point(grid, [&](const ModelParams& p) {
    try {
      const auto ex = extract_mode_generator(build_liouvillian(p), p);
      worst = std::max({worst, ex.residual, ex.sector_mixing()});
    } catch (const ClosureViolation& e) {
      worst = std::max(worst, 1.0);
      detail = describe(p) + ": " + e.what();
    }
  });
  return finish("generator_closure", worst, tol::kClosure, detail);
}

CheckResult check_generator_match(const ParameterGrid& grid, double m_perturbation) {
  double worst = 0.0;
  std::string where;
  for_each_point(grid, [&](const ModelParams& p) {
    GeneratorExtraction ex;
    try {
      ex = extract_mode_generator(build_liouvillian(p), p);
    } catch (const ClosureViolation& e) {
      worst = std::max(worst, 1.0);
      where = describe(p) + ": " + e.what();
      return;
    }
    Eigen::Matrix4cd m = build_meso_generator(p).m;
    m(0, 2) += m_perturbation;
    const double r = std::max((ex.annihilation_block() - m.transpose()).cwiseAbs().maxCoeff(),
                              (ex.creation_block() - m.transpose().conjugate()).cwiseAbs().maxCoeff());
    if (r > worst) {
      worst = r;
      where = describe(p);
    }
  });
  return finish("generator_matches_M", worst, tol::kClosure, where);
}

CheckResult check_ccr(const ParameterGrid& grid) {
  double worst = 0.0;
  for_each_point(grid, [&](const ModelParams& p) {
    const auto c = mode_commutators(build_mode_map(p), build_thermal_state(p));
    worst = std::max({worst, (c.mixed - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(),
                      c.plain.cwiseAbs().maxCoeff()});
  });
  return finish("canonical_commutation", worst, tol::kStructural);
}

CheckResult check_complement_decoupling(const ParameterGrid& grid) {
  double worst = 0.0;
  for_each_point(grid, [&](const ModelParams& p) {
    const ThermalSiteState st = build_thermal_state(p);
    for (const auto& y : complementary_observables())
      for (const auto& x : fluctuation_observables()) worst = std::max(worst, std::abs(st.expectation(commutator(y, x))));
  });
  return finish("complement_decoupling", worst, tol::kStructural);
}

CheckResult check_clt(const std::vector<std::uint64_t>& sizes) {
  // The Weyl limit of the eight observables does not depend on eps or T
  // (omega(x) = 0, x^2 = 1), but the thermal state does enter the site factor.
  double worst_final = 0.0;
  bool monotone = true;
  std::string detail;
  for (const double temperature : {0.1, 1.0}) {
    const ModelParams p = ModelParams::make(1.0, temperature, 0.0);
    const auto rows = clt_table(p, sizes);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const bool last_of_observable = (i + 1) % sizes.size() == 0;
      if (!last_of_observable && !(rows[i + 1].abs_error < rows[i].abs_error)) {
        monotone = false;
        detail = "error not decreasing for x_" + std::to_string(rows[i].observable);
      }
      if (last_of_observable) worst_final = std::max(worst_final, rows[i].abs_error);
    }
  }
  CheckResult r = finish("quantum_central_limit", worst_final, 1e-2, detail);
  r.pass = r.pass && monotone;
  return r;
}

CheckResult check_meso_stationarity(const ParameterGrid& grid, double t_max, int t_steps) {
  double worst = 0.0;
  double worst_e = 0.0;
  const auto ts = uniform_times(t_max, t_steps);
  for_each_point(grid, [&](const ModelParams& p) {
    const auto g = build_meso_generator(p);
    const auto s0 = initial_state(p, 0.0);
    const Matrix8cd thermal = Matrix8cd::Identity() / (2.0 * p.eta());
    for (const double t : ts) {
      const auto s = propagate(s0, g, t);
      worst = std::max(worst, (s.gamma() - thermal).cwiseAbs().maxCoeff());
      worst_e = std::max(worst_e, negativity(s).log_negativity);
    }
  });
  CheckResult r = finish("meso_stationarity", worst, 1e-10);
  if (worst_e != 0.0) {
    r.pass = false;
    r.detail = "thermal state acquired E = " + format_number(worst_e);
  }
  return r;
}

CheckResult check_physicality(const ParameterGrid& grid, double squeeze_r, double t_max, int t_steps) {
  double worst = 0.0;
  double worst_swap = 0.0;
  const auto ts = uniform_times(t_max, t_steps);
  for_each_point(grid, [&](const ModelParams& p) {
    const auto g = build_meso_generator(p);
    const auto s0 = initial_state(p, squeeze_r);
    for (const double t : ts) {
      const auto s = propagate(s0, g, t);
      const auto nus = symplectic_eigenvalues(full_quadrature(s));
      worst = std::max(worst, 1.0 - nus.front());
      worst_swap = std::max(worst_swap, s.swap_asymmetry());
    }
  });
  CheckResult r = finish("physicality_along_curves", std::max(0.0, worst), tol::kSpectral);
  if (worst_swap > tol::kStructural) {
    r.pass = false;
    r.detail = "swap symmetry broken by " + format_number(worst_swap);
  }
  return r;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  const ParameterGrid grid = grid_for(opts.level);
  const bool full = opts.level == VerifyLevel::full;
  const std::vector<double> d_gammas =
      opts.injected_gamma ? std::vector<double>{*opts.injected_gamma} : grid.gammas;
  const std::vector<std::uint64_t> sizes =
      full ? std::vector<std::uint64_t>{100, 1000, 10000, 100000, 1000000} : std::vector<std::uint64_t>{100, 1000, 10000};
  const int steps = full ? 501 : 101;
  // Physicality is probed on a coarser temperature set; each point walks a full time grid.
  ParameterGrid phys = grid;
  if (!full) phys.epsilons = {1.0};

  std::vector<std::function<CheckResult()>> checks = {
      [&] { return check_dissipation_spectrum(d_gammas); },
      [&] { return check_dissipation_positivity(d_gammas); },
      [&] { return check_cp_boundary(); },
      [&] { return check_hamiltonian_symmetry(grid); },
      [&] { return check_thermal_invariance(grid); },
      [&] { return check_generator_closure(grid); },
      [&] { return check_generator_match(grid, opts.m_perturbation); },
      [&] { return check_ccr(grid); },
      [&] { return check_complement_decoupling(grid); },
      [&] { return check_clt(sizes); },
      [&] { return check_meso_stationarity(grid, 5.0, steps); },
      [&] { return check_physicality(phys, 1.0, 5.0, steps); },
  };

  std::vector<CheckResult> results(checks.size());
  if (opts.jobs <= 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) results[i] = checks[i]();
  } else {
    std::vector<std::future<CheckResult>> futures;
    for (auto& c : checks) futures.push_back(std::async(std::launch::async, c));
    for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

void print_report(std::ostream& os, const std::vector<CheckResult>& results) {
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-28s residual=%-11.3e tol=%-9.1e %s", r.name.c_str(), r.residual, r.tolerance,
                  r.pass ? "PASS" : "FAIL");
    os << line;
    if (!r.detail.empty()) os << "  (" << r.detail << ')';
    os << '\n';
  }
  const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.pass; });
  os << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
}

}  // namespace mesoent
