#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mesoent {

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  /// Replaces the gamma grid of the noise-matrix check (negative control: 0.6).
  std::optional<double> injected_gamma;
  /// Added to M(1,3) before the generator-match comparison (negative control).
  double m_perturbation = 0.0;
  int jobs = 1;
};

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;
  std::string detail;
};

struct ParameterGrid {
  std::vector<double> epsilons;
  std::vector<double> temperatures;
  std::vector<double> gammas;
};

/// eps in {0.5, 1, 2}, T in {0.1, 0.5, 1, 5}, gamma in {0, 0.1, 0.25, 0.5}.
ParameterGrid certification_grid();
ParameterGrid grid_for(VerifyLevel level);

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);
void print_report(std::ostream& os, const std::vector<CheckResult>& results);

// Individual checks, also used by the acceptance suite.
CheckResult check_dissipation_spectrum(const std::vector<double>& gammas);
CheckResult check_dissipation_positivity(const std::vector<double>& gammas);
/// PSD at gamma = 1/2 and 1/2 - 1e-9, indefinite at 1/2 + 1e-9.
CheckResult check_cp_boundary();
CheckResult check_hamiltonian_symmetry(const ParameterGrid& grid);
CheckResult check_thermal_invariance(const ParameterGrid& grid);
CheckResult check_generator_closure(const ParameterGrid& grid);
CheckResult check_generator_match(const ParameterGrid& grid, double m_perturbation = 0.0);
CheckResult check_ccr(const ParameterGrid& grid);
CheckResult check_complement_decoupling(const ParameterGrid& grid);
CheckResult check_clt(const std::vector<std::uint64_t>& sizes);
CheckResult check_meso_stationarity(const ParameterGrid& grid, double t_max, int t_steps);
CheckResult check_physicality(const ParameterGrid& grid, double squeeze_r, double t_max, int t_steps);

}  // namespace mesoent
