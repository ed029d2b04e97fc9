#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mesoent/spin_algebra.hpp"

namespace mesoent {

/// Lifetime threshold: a grid time counts as entangled when E > this.
inline constexpr double kEntangledThreshold = 1e-12;

struct ExperimentConfig {
  double epsilon = 1.0;
  double temperature = 0.1;
  double gamma = 0.5;
  double squeeze_r = 1.0;
  double t_max = 5.0;
  int t_steps = 500;  // samples on [0, t_max], both ends included
  std::vector<double> gamma_list = {0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<double> temperature_list = {0.1, 0.5, 1.0};
  std::string output;
  int jobs = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  ModelParams params() const;
  std::vector<double> time_grid() const;
};

/// Reads a flat JSON object with the ExperimentConfig field names on top of
/// `base`. Unknown keys and ill-typed values raise ConfigError.
ExperimentConfig load_config_json(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

struct CurveSample {
  double t;
  double nu_min;
  double log_negativity;
};

struct NegativityCurve {
  ExperimentConfig config;  // effective configuration of this curve
  double eta;
  std::vector<CurveSample> samples;

  double max_log_negativity() const;
  double time_of_max() const;
  /// Largest grid time with E > kEntangledThreshold, 0 if never entangled.
  double lifetime() const;
};

struct SummaryRow {
  double value;  // the swept gamma or temperature
  double max_log_negativity;
  double lifetime;
};

struct SweepResult {
  std::string swept;  // "gamma" or "temperature"
  std::vector<NegativityCurve> curves;
  std::vector<SummaryRow> summary;
};

NegativityCurve run_curve(const ExperimentConfig& cfg);

/// One curve per cfg.gamma_list entry at the remaining cfg values.
/// gamma > 1/2 is refused (ConfigError) before any work starts.
SweepResult sweep_gamma(const ExperimentConfig& cfg);

/// One curve per cfg.temperature_list entry. T <= 0 is refused.
SweepResult sweep_temperature(const ExperimentConfig& cfg);

/// "%.12g"
std::string format_number(double v);

void write_curve_csv(std::ostream& os, const NegativityCurve& curve);
void write_summary_csv(std::ostream& os, const SweepResult& sweep, const ExperimentConfig& cfg);
std::string curve_csv(const NegativityCurve& curve);

/// File name of one sweep member, e.g. "curve_gamma_0.3.csv".
std::string sweep_curve_filename(const SweepResult& sweep, std::size_t index);

/// Writes every curve plus summary_<swept>.csv into `dir`; returns the paths written.
std::vector<std::filesystem::path> write_sweep(const std::filesystem::path& dir, const SweepResult& sweep,
                                               const ExperimentConfig& cfg);

/// gnuplot script plotting E(t) from the given CSV files.
void write_plot_script(std::ostream& os, const std::vector<std::filesystem::path>& csv_files,
                       const std::string& title);

struct CltRow {
  int observable;  // 1..8
  std::uint64_t n;
  std::complex<double> finite_n;
  std::complex<double> limit;
  double abs_error;
};

/// Finite-N Weyl expectations vs their Gaussian limit for the eight observables.
std::vector<CltRow> clt_table(const ModelParams& p, const std::vector<std::uint64_t>& sizes);
void write_clt_csv(std::ostream& os, const ModelParams& p, const std::vector<CltRow>& rows);

}  // namespace mesoent
