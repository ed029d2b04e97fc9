// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mesoent/entanglement.hpp"
#include "mesoent/errors.hpp"
#include "mesoent/experiment.hpp"
#include "mesoent/mesoscopic.hpp"
#include "mesoent/microscopic_oracle.hpp"
#include "mesoent/spin_algebra.hpp"
#include "mesoent/verify.hpp"

namespace {

using namespace mesoent;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct GridPoint {
  double eps, temp, gamma;
};

std::vector<GridPoint> certification_points() {
  const auto g = certification_grid();
  std::vector<GridPoint> out;
  for (const double e : g.epsilons)
    for (const double t : g.temperatures)
      for (const double gm : g.gammas) out.push_back({e, t, gm});
  return out;
}

ExperimentConfig reference_config() {
  ExperimentConfig cfg;
  cfg.epsilon = 1.0;
  cfg.temperature = 0.1;
  cfg.gamma = 0.5;
  cfg.squeeze_r = 1.0;
  cfg.t_max = 5.0;
  cfg.t_steps = 500;
  return cfg;
}

Outcome generator_certification() {
  const auto start = Clock::now();
  double closure = 0.0, block = 0.0;
  bool closed = true;
  for (const auto& g : certification_points()) {
    const auto p = ModelParams::make(g.eps, g.temp, g.gamma);
    try {
      const auto ex = extract_mode_generator(build_liouvillian(p), p);
      closure = std::max(closure, ex.residual);
      const Eigen::Matrix4cd mt = build_meso_generator(p).m.transpose();
      block = std::max(block, (ex.annihilation_block() - mt).cwiseAbs().maxCoeff());
    } catch (const ClosureViolation&) {
      closed = false;
    }
  }
  const double runtime = seconds_since(start);
  const bool pass = closed && closure <= 1e-10 && block <= 1e-10 && runtime < 1.0;
  return {pass, "closure residual " + fmt(closure) + " (<= 1e-10), |block - M^T| " + fmt(block) +
                    " (<= 1e-10), runtime " + fmt(runtime) + " s (< 1 s)"};
}

Outcome cp_boundary() {
  double spec_err = 0.0;
  for (const double g : {0.0, 0.1, 0.25, 0.4, 0.5}) {
    const auto d = build_dissipation_matrix(g);
    const double expected[4] = {1.0 - 2.0 * g, 1.0, 1.0, 1.0 + 2.0 * g};
    for (int k = 0; k < 4; ++k) spec_err = std::max(spec_err, std::abs(d.eigenvalues[k] - expected[k]));
  }
  const bool at_half = build_dissipation_matrix(0.5).positive_semidefinite;
  const bool below = build_dissipation_matrix(0.5 - 1e-9).positive_semidefinite;
  const bool above = build_dissipation_matrix(0.5 + 1e-9).positive_semidefinite;
  const bool pass = spec_err <= 1e-12 && at_half && below && !above;
  return {pass, "spectrum error " + fmt(spec_err) + " (<= 1e-12), PSD at 1/2: " + (at_half ? "yes" : "no") +
                    ", PSD at 1/2+1e-9: " + (above ? "yes" : "no")};
}

Outcome thermal_invariance() {
  double micro = 0.0, meso = 0.0, max_e = 0.0;
  ExperimentConfig cfg = reference_config();
  const auto ts = cfg.time_grid();
  for (const auto& g : certification_points()) {
    const auto p = ModelParams::make(g.eps, g.temp, g.gamma);
    micro = std::max(micro, stationarity_residual(build_liouvillian(p), build_thermal_state(p)));
    const auto gen = build_meso_generator(p);
    const auto s0 = initial_state(p, 0.0);
    const Matrix8cd th = Matrix8cd::Identity() / (2.0 * p.eta());
    for (const double t : ts) {
      const auto st = propagate(s0, gen, t);
      meso = std::max(meso, (st.gamma() - th).cwiseAbs().maxCoeff());
      max_e = std::max(max_e, negativity(st).log_negativity);
    }
  }
  const bool pass = micro <= 1e-12 && meso <= 1e-10 && max_e == 0.0;
  return {pass, "micro |Tr(rho L[b])| " + fmt(micro) + " (<= 1e-12), meso sup|Gamma - I/2eta| " + fmt(meso) +
                    " (<= 1e-10), max E " + fmt(max_e) + " (== 0)"};
}

Outcome ccr() {
  double worst = 0.0;
  for (const auto& g : certification_points()) {
    const auto p = ModelParams::make(g.eps, g.temp, g.gamma);
    const auto cm = mode_commutators(build_mode_map(p), build_thermal_state(p));
    worst = std::max(worst, (cm.mixed - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst, cm.plain.cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max deviation from canonical " + fmt(worst) + " (<= 1e-12)"};
}

Outcome quantum_clt() {
  bool monotone = true;
  double worst = 0.0;
  for (const double temp : {0.1, 0.5, 1.0, 5.0}) {
    const auto st = build_thermal_state(ModelParams::make(1.0, temp, 0.0));
    for (const auto& x : fluctuation_observables()) {
      const cd limit = weyl_expectation_limit(x, st);
      double prev = 1e300;
      for (const std::uint64_t n : {100ULL, 1000ULL, 10000ULL}) {
        const double err = std::abs(weyl_expectation_finite_N(x, n, st) - limit);
        if (err > prev) monotone = false;
        prev = err;
      }
      worst = std::max(worst, prev);
    }
  }
  const auto st = build_thermal_state(ModelParams::make(1.0, 1.0, 0.0));
  const auto& x1 = fluctuation_observables()[0];
  const double finite = weyl_expectation_finite_N(x1, 100, st).real();
  const double limit = weyl_expectation_limit(x1, st).real();
  const bool anchor = std::abs(finite - 0.606024) < 5e-7 && std::abs(limit - 0.606531) < 5e-7;
  const bool pass = monotone && worst <= 1e-2 && anchor;
  return {pass, "max error at N=1e4 " + fmt(worst) + " (<= 1e-2), monotone: " + (monotone ? "yes" : "no") +
                    ", x1 at N=100 " + std::to_string(finite) + " vs limit " + std::to_string(limit)};
}

Outcome separability() {
  bool initial_zero = true;
  double nu_err = 0.0;
  for (const double r : {0.0, 0.5, 1.0, 2.0})
    for (const double temp : {0.1, 0.5, 1.0, 5.0}) {
      const auto p = ModelParams::make(1.0, temp, 0.5);
      const auto res = negativity(initial_state(p, r));
      if (res.log_negativity != 0.0) initial_zero = false;
      nu_err = std::max(nu_err, std::abs(res.nu_min * p.eta() - 1.0));
    }
  double decoupled = 0.0;
  for (const auto& [gamma, r] : {std::pair{0.0, 1.0}, std::pair{0.5, 0.0}})
    for (const double temp : {0.1, 0.5, 1.0}) {
      ExperimentConfig cfg = reference_config();
      cfg.gamma = gamma;
      cfg.squeeze_r = r;
      cfg.temperature = temp;
      decoupled = std::max(decoupled, run_curve(cfg).max_log_negativity());
    }
  const bool pass = initial_zero && nu_err <= 1e-12 && decoupled == 0.0;
  return {pass, std::string("E(0) == 0: ") + (initial_zero ? "yes" : "no") + ", |eta nu(0) - 1| " + fmt(nu_err) +
                    ", max E with gamma=0 or r=0: " + fmt(decoupled)};
}

Outcome gamma_sweep_growth() {
  ExperimentConfig cfg = reference_config();
  cfg.gamma_list = {0.1, 0.2, 0.3, 0.4, 0.5};
  const auto start = Clock::now();
  const auto sweep = sweep_gamma(cfg);
  const double runtime = seconds_since(start);
  bool nondecreasing = true;
  std::string values;
  for (std::size_t k = 0; k < sweep.summary.size(); ++k) {
    if (k > 0 && sweep.summary[k].max_log_negativity < sweep.summary[k - 1].max_log_negativity) nondecreasing = false;
    values += (k ? ", " : "") + fmt(sweep.summary[k].max_log_negativity);
  }
  const double top = sweep.summary.back().max_log_negativity;
  const bool pass = top > 0.0 && nondecreasing && runtime < 10.0;
  return {pass, "max E over gamma {0.1..0.5}: [" + values + "], runtime " + fmt(runtime) + " s (< 10 s)"};
}

std::pair<Outcome, std::string> temperature_sweep_decay() {
  auto run = [](std::vector<double> temps) {
    ExperimentConfig cfg = reference_config();
    cfg.temperature_list = std::move(temps);
    return sweep_temperature(cfg);
  };
  auto describe = [](const SweepResult& s, bool& strict) {
    std::string maxes, lives;
    strict = true;
    for (std::size_t k = 0; k < s.summary.size(); ++k) {
      if (k > 0 && !(s.summary[k].max_log_negativity < s.summary[k - 1].max_log_negativity)) strict = false;
      if (k > 0 && !(s.summary[k].lifetime < s.summary[k - 1].lifetime)) strict = false;
      maxes += (k ? ", " : "") + fmt(s.summary[k].max_log_negativity);
      lives += (k ? ", " : "") + fmt(s.summary[k].lifetime);
    }
    return "max E [" + maxes + "], lifetime [" + lives + "]";
  };
  bool strict = false;
  const std::string main = describe(run({0.1, 0.5, 1.0}), strict);
  bool info_strict = false;
  const std::string info = describe(run({0.1, 0.2, 0.25}), info_strict);
  return {{strict, "T {0.1, 0.5, 1.0}: " + main + "; strictly decreasing required"},
          "T {0.1, 0.2, 0.25}: " + info + (info_strict ? " (strictly decreasing)" : " (not strictly decreasing)")};
}

Outcome asymptotics() {
  std::vector<ExperimentConfig> runs;
  for (const double g : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    ExperimentConfig cfg = reference_config();
    cfg.gamma = g;
    runs.push_back(cfg);
  }
  for (const double temp : {0.5, 1.0}) {
    ExperimentConfig cfg = reference_config();
    cfg.temperature = temp;
    runs.push_back(cfg);
  }
  double worst_rel = 0.0;
  double tail_e = 0.0;
  for (const auto& cfg : runs) {
    const auto p = cfg.params();
    const auto gen = build_meso_generator(p);
    const auto s0 = initial_state(p, cfg.squeeze_r);
    // Least-squares slope of log ||Gamma(t) - I/(2 eta)|| on t in [10, 20].
    double st = 0, sy = 0, stt = 0, sty = 0;
    int n = 0;
    for (int k = 0; k <= 40; ++k) {
      const double t = 10.0 + 0.25 * k;
      const double y = std::log(deviation_from_thermal(s0, gen, t).operatorNorm());
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
      ++n;
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    const double expected = 2.0 * (1.0 - cfg.gamma);
    worst_rel = std::max(worst_rel, std::abs(-slope - expected) / expected);

    ExperimentConfig long_run = cfg;
    long_run.t_max = 40.0;
    long_run.t_steps = 401;
    const auto curve = run_curve(long_run);
    tail_e = std::max(tail_e, curve.samples.back().log_negativity);
  }
  const bool pass = worst_rel <= 0.10 && tail_e == 0.0;
  return {pass, "worst relative rate error " + fmt(worst_rel) + " (<= 10%) over " + std::to_string(runs.size()) +
                    " runs, max E(40) " + fmt(tail_e) + " (== 0)"};
}

Outcome tmsv_anchor() {
  const double s = 1.0;
  Eigen::Matrix4cd sm = Eigen::Matrix4cd::Identity() * 0.5;
  Eigen::Matrix4cd pm = Eigen::Matrix4cd::Zero();
  sm(index_of(Mode::a1), index_of(Mode::a1)) = 0.5 * std::cosh(2.0 * s);
  sm(index_of(Mode::b1), index_of(Mode::b1)) = 0.5 * std::cosh(2.0 * s);
  pm(index_of(Mode::a1), index_of(Mode::b1)) = 0.5 * std::sinh(2.0 * s);
  pm(index_of(Mode::b1), index_of(Mode::a1)) = 0.5 * std::sinh(2.0 * s);
  const auto res = negativity(FluctuationGaussianState::from_moments(sm, pm, 0.5));
  const double nu_err = std::abs(res.nu_min - std::exp(-2.0));
  const double e_err = std::abs(res.log_negativity - 2.0);
  const double vacuum = log_negativity(min_symplectic_pt({Eigen::Matrix4d::Identity()}));
  const bool pass = nu_err <= 1e-10 && e_err <= 1e-10 && vacuum == 0.0;
  return {pass, "|nu - e^-2| " + fmt(nu_err) + ", |E - 2| " + fmt(e_err) + " (<= 1e-10), vacuum E " + fmt(vacuum)};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "mesoent_acceptance_determinism";
  fs::remove_all(base);
  ExperimentConfig cfg = reference_config();
  bool same = curve_csv(run_curve(cfg)) == curve_csv(run_curve(cfg));
  std::size_t files = 0;
  for (const int jobs : {1, 4}) {
    cfg.jobs = jobs;
    const auto first = write_sweep(base / ("a" + std::to_string(jobs)), sweep_gamma(cfg), cfg);
    const auto second = write_sweep(base / ("b" + std::to_string(jobs)), sweep_gamma(cfg), cfg);
    for (std::size_t k = 0; k < first.size(); ++k) {
      same = same && read_bytes(first[k]) == read_bytes(second[k]);
      same = same && read_bytes(first[k]) == read_bytes(base / "a1" / first[k].filename());
      ++files;
    }
  }
  fs::remove_all(base);
  return {same, std::to_string(files) + " sweep files plus one curve compared byte-for-byte across runs and job counts"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << o.detail << '\n';
    if (!o.pass) ++failures;
  };
  try {
    report(1, "generator certification", generator_certification());
    report(2, "CP boundary", cp_boundary());
    report(3, "thermal invariance", thermal_invariance());
    report(4, "canonical commutation", ccr());
    report(5, "quantum central limit", quantum_clt());
    report(6, "separability at t=0 and decoupled limits", separability());
    report(7, "entanglement grows with gamma", gamma_sweep_growth());
    const auto [decay, info] = temperature_sweep_decay();
    report(8, "entanglement decreases with temperature", decay);
    std::cout << "INFO  [8] " << info << '\n';
    report(9, "asymptotic relaxation", asymptotics());
    report(10, "two-mode squeezed vacuum anchor", tmsv_anchor());
    report(11, "determinism", determinism());
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance aborted: " << e.what() << '\n';
    return 2;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed") << '\n';
  return failures == 0 ? 0 : 1;
}
