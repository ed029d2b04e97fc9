// mesoent: entanglement of mesoscopic fluctuation modes of two spin chains in
// a common bath. Subcommands: curve, sweep-gamma, sweep-temp, verify, clt.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mesoent/errors.hpp"
#include "mesoent/experiment.hpp"
#include "mesoent/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config_path;
  std::optional<double> epsilon, temperature, gamma, squeeze_r, t_max;
  std::optional<int> t_steps, jobs;
  std::vector<double> gamma_list, temperature_list;
  std::string output;
  std::string plot_script;
};

void add_model_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config_path, "flat JSON config; flags override its values");
  cmd->add_option("--epsilon", o.epsilon, "energy parameter (default 1)");
  cmd->add_option("--temperature,-T", o.temperature, "bath temperature, > 0 (default 0.1)");
  cmd->add_option("--gamma,-g", o.gamma, "dissipation strength in [0, 1/2] (default 0.5)");
  cmd->add_option("--squeeze,-r", o.squeeze_r, "common squeeze parameter of a1 and b1 (default 1)");
  cmd->add_option("--t-max", o.t_max, "end of the time grid (default 5)");
  cmd->add_option("--t-steps", o.t_steps, "number of time samples, endpoints included (default 500)");
  cmd->add_option("-o,--output", o.output, "output file (curve) or directory (sweeps)");
}

mesoent::ExperimentConfig resolve(const Overrides& o) {
  mesoent::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = mesoent::load_config_file(o.config_path, cfg);
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (o.temperature) cfg.temperature = *o.temperature;
  if (o.gamma) cfg.gamma = *o.gamma;
  if (o.squeeze_r) cfg.squeeze_r = *o.squeeze_r;
  if (o.t_max) cfg.t_max = *o.t_max;
  if (o.t_steps) cfg.t_steps = *o.t_steps;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (!o.gamma_list.empty()) cfg.gamma_list = o.gamma_list;
  if (!o.temperature_list.empty()) cfg.temperature_list = o.temperature_list;
  if (!o.output.empty()) cfg.output = o.output;
  cfg.validate();
  return cfg;
}

int run_curve_cmd(const Overrides& o) {
  const auto cfg = resolve(o);
  const auto curve = mesoent::run_curve(cfg);
  if (cfg.output.empty()) {
    mesoent::write_curve_csv(std::cout, curve);
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw mesoent::ConfigError("output", "cannot write " + cfg.output);
    mesoent::write_curve_csv(f, curve);
  }
  if (!o.plot_script.empty()) {
    std::ofstream f(o.plot_script);
    mesoent::write_plot_script(f, {std::filesystem::path(cfg.output.empty() ? std::string("curve.csv") : cfg.output)},
                               "E(t)");
  }
  return kExitOk;
}

int run_sweep_cmd(const Overrides& o, bool over_gamma) {
  const auto cfg = resolve(o);
  const auto sweep = over_gamma ? mesoent::sweep_gamma(cfg) : mesoent::sweep_temperature(cfg);
  if (cfg.output.empty()) {
    mesoent::write_summary_csv(std::cout, sweep, cfg);
    return kExitOk;
  }
  const auto written = mesoent::write_sweep(cfg.output, sweep, cfg);
  for (const auto& p : written) std::cerr << "wrote " << p.string() << '\n';
  mesoent::write_summary_csv(std::cout, sweep, cfg);
  if (!o.plot_script.empty()) {
    std::ofstream f(o.plot_script);
    mesoent::write_plot_script(f, written, over_gamma ? "E(t) for several gamma" : "E(t) for several T");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative entanglement of mesoscopic fluctuation modes of two spin-1/2 chains"};
  app.require_subcommand(1);

  Overrides curve_opts, gamma_opts, temp_opts;

  auto* curve = app.add_subcommand("curve", "E(t) for one parameter point");
  add_model_options(curve, curve_opts);
  curve->add_option("--plot-script", curve_opts.plot_script, "also write a gnuplot script");

  auto* sg = app.add_subcommand("sweep-gamma", "E(t) for a list of gamma values");
  add_model_options(sg, gamma_opts);
  sg->add_option("--gammas", gamma_opts.gamma_list, "gamma values (default 0.1 0.2 0.3 0.4 0.5)");
  sg->add_option("-j,--jobs", gamma_opts.jobs, "worker threads");
  sg->add_option("--plot-script", gamma_opts.plot_script, "also write a gnuplot script");

  auto* st = app.add_subcommand("sweep-temp", "E(t) for a list of temperatures");
  add_model_options(st, temp_opts);
  st->add_option("--temperatures", temp_opts.temperature_list, "temperatures (default 0.1 0.5 1.0)");
  st->add_option("-j,--jobs", temp_opts.jobs, "worker threads");
  st->add_option("--plot-script", temp_opts.plot_script, "also write a gnuplot script");

  mesoent::VerifyOptions vopts;
  std::string level = "fast";
  std::optional<double> inject_gamma;
  auto* verify = app.add_subcommand("verify", "run the cross-module verification suite");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--inject-gamma", inject_gamma, "probe the noise-matrix check at this gamma");
  verify->add_option("--perturb-m", vopts.m_perturbation, "add this to M(1,3) before the generator match");
  verify->add_option("-j,--jobs", vopts.jobs, "run checks on this many threads");

  double clt_eps = 1.0;
  double clt_temp = 1.0;
  std::vector<std::uint64_t> clt_sizes = {100, 1000, 10000};
  auto* clt = app.add_subcommand("clt", "finite-N Weyl expectations against the Gaussian limit");
  clt->add_option("--epsilon", clt_eps, "energy parameter");
  clt->add_option("--temperature,-T", clt_temp, "temperature");
  clt->add_option("-N,--sizes", clt_sizes, "chain lengths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*curve) return run_curve_cmd(curve_opts);
    if (*sg) return run_sweep_cmd(gamma_opts, true);
    if (*st) return run_sweep_cmd(temp_opts, false);
    if (*verify) {
      vopts.level = level == "full" ? mesoent::VerifyLevel::full : mesoent::VerifyLevel::fast;
      vopts.injected_gamma = inject_gamma;
      const auto results = mesoent::run_verification(vopts);
      mesoent::print_report(std::cout, results);
      return mesoent::all_passed(results) ? kExitOk : kExitVerifyFailed;
    }
    if (*clt) {
      const auto p = mesoent::ModelParams::make(clt_eps, clt_temp, 0.0);
      for (const auto n : clt_sizes)
        if (n == 0) throw mesoent::ConfigError("sizes", "N must be >= 1");
      mesoent::write_clt_csv(std::cout, p, mesoent::clt_table(p, clt_sizes));
      return kExitOk;
    }
  } catch (const mesoent::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mesoent::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}
