#include "mesoent/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mesoent/entanglement.hpp"
#include "mesoent/errors.hpp"
#include "mesoent/mesoscopic.hpp"
#include "mesoent/microscopic_oracle.hpp"

namespace mesoent {

namespace {

using nlohmann::json;

void check_positive_finite(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) throw ConfigError(field, "must be finite and > 0");
}

void check_temperature(double t, const char* field) {
  if (!std::isfinite(t) || t <= 0.0)
    throw ConfigError(field, "temperature must be finite and > 0; at T = 0 the fluctuation algebra contracts to a1, b1");
}

void check_gamma(double g, const char* field) {
  if (!std::isfinite(g) || g < 0.0) throw ConfigError(field, "gamma must be finite and >= 0");
  if (g > 0.5) throw ConfigError(field, "gamma > 1/2 makes the noise matrix indefinite; refusing a non-CP dynamics");
}

template <typename T>
T read_field(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, std::string("wrong type: ") + e.what());
  }
}

void echo_config(std::ostream& os, const ExperimentConfig& cfg, double eta) {
  os << "# epsilon=" << format_number(cfg.epsilon) << '\n';
  os << "# temperature=" << format_number(cfg.temperature) << '\n';
  os << "# gamma=" << format_number(cfg.gamma) << '\n';
  os << "# squeeze_r=" << format_number(cfg.squeeze_r) << '\n';
  os << "# eta=" << format_number(eta) << '\n';
  os << "# t_max=" << format_number(cfg.t_max) << '\n';
  os << "# t_steps=" << cfg.t_steps << '\n';
}

// Runs `work(i)` for i in [0, n) on up to `jobs` threads; results land in index order.
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, int jobs, F work) {
  std::vector<R> out(n);
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = work(i);
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = work(i);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

SummaryRow summarize(const NegativityCurve& c, double value) {
  return SummaryRow{value, c.max_log_negativity(), c.lifetime()};
}

}  // namespace

void ExperimentConfig::validate() const {
  check_positive_finite(epsilon, "epsilon");
  check_temperature(temperature, "temperature");
  check_gamma(gamma, "gamma");
  if (!std::isfinite(squeeze_r)) throw ConfigError("squeeze_r", "must be finite");
  check_positive_finite(t_max, "t_max");
  if (t_steps < 2) throw ConfigError("t_steps", "need at least 2 samples");
  if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
  if (gamma_list.empty()) throw ConfigError("gamma_list", "must not be empty");
  for (const double g : gamma_list) check_gamma(g, "gamma_list");
  if (temperature_list.empty()) throw ConfigError("temperature_list", "must not be empty");
  for (const double t : temperature_list) check_temperature(t, "temperature_list");
  // eta must stay strictly below 1 in double precision.
  try {
    (void)ModelParams::make(epsilon, temperature, gamma);
    for (const double t : temperature_list) (void)ModelParams::make(epsilon, t, gamma);
  } catch (const DomainError& e) {
    throw ConfigError("temperature", e.what());
  }
}

ModelParams ExperimentConfig::params() const { return ModelParams::make(epsilon, temperature, gamma); }

std::vector<double> ExperimentConfig::time_grid() const {
  std::vector<double> ts(static_cast<std::size_t>(t_steps));
  for (int k = 0; k < t_steps; ++k) ts[static_cast<std::size_t>(k)] = t_max * k / (t_steps - 1);
  ts.back() = t_max;
  return ts;
}

ExperimentConfig load_config_json(const std::string& text, ExperimentConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<config>", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("<config>", "top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "epsilon") base.epsilon = read_field<double>(value, key);
    else if (key == "temperature") base.temperature = read_field<double>(value, key);
    else if (key == "gamma") base.gamma = read_field<double>(value, key);
    else if (key == "squeeze_r") base.squeeze_r = read_field<double>(value, key);
    else if (key == "t_max") base.t_max = read_field<double>(value, key);
    else if (key == "t_steps") base.t_steps = read_field<int>(value, key);
    else if (key == "gamma_list") base.gamma_list = read_field<std::vector<double>>(value, key);
    else if (key == "temperature_list") base.temperature_list = read_field<std::vector<double>>(value, key);
    else if (key == "output") base.output = read_field<std::string>(value, key);
    else if (key == "jobs") base.jobs = read_field<int>(value, key);
    else throw ConfigError(key, "unknown configuration key");
  }
  return base;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config_json(buf.str(), std::move(base));
}

double NegativityCurve::max_log_negativity() const {
  double best = 0.0;
  for (const auto& s : samples) best = std::max(best, s.log_negativity);
  return best;
}

double NegativityCurve::time_of_max() const {
  double best = -1.0;
  double when = 0.0;
  for (const auto& s : samples)
    if (s.log_negativity > best) {
      best = s.log_negativity;
      when = s.t;
    }
  return when;
}

double NegativityCurve::lifetime() const {
  double last = 0.0;
  for (const auto& s : samples)
    if (s.log_negativity > kEntangledThreshold) last = s.t;
  return last;
}

NegativityCurve run_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  const ModelParams p = cfg.params();
  const MesoGenerator g = build_meso_generator(p);
  const FluctuationGaussianState s0 = initial_state(p, cfg.squeeze_r);

  NegativityCurve curve{cfg, p.eta(), {}};
  const auto ts = cfg.time_grid();
  curve.samples.reserve(ts.size());
  for (const double t : ts) {
    const NegativityResult r = negativity(propagate(s0, g, t));
    curve.samples.push_back({t, r.nu_min, r.log_negativity});
  }
  return curve;
}

SweepResult sweep_gamma(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.swept = "gamma";
  out.curves = parallel_map<NegativityCurve>(cfg.gamma_list.size(), cfg.jobs, [&](std::size_t i) {
    ExperimentConfig point = cfg;
    point.gamma = cfg.gamma_list[i];
    return run_curve(point);
  });
  for (std::size_t i = 0; i < out.curves.size(); ++i) out.summary.push_back(summarize(out.curves[i], cfg.gamma_list[i]));
  return out;
}

SweepResult sweep_temperature(const ExperimentConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.swept = "temperature";
  out.curves = parallel_map<NegativityCurve>(cfg.temperature_list.size(), cfg.jobs, [&](std::size_t i) {
    ExperimentConfig point = cfg;
    point.temperature = cfg.temperature_list[i];
    return run_curve(point);
  });
  for (std::size_t i = 0; i < out.curves.size(); ++i)
    out.summary.push_back(summarize(out.curves[i], cfg.temperature_list[i]));
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_curve_csv(std::ostream& os, const NegativityCurve& curve) {
  os << "# mesoent negativity curve\n";
  echo_config(os, curve.config, curve.eta);
  os << "t,nu_min,E\n";
  for (const auto& s : curve.samples)
    os << format_number(s.t) << ',' << format_number(s.nu_min) << ',' << format_number(s.log_negativity) << '\n';
}

std::string curve_csv(const NegativityCurve& curve) {
  std::ostringstream os;
  write_curve_csv(os, curve);
  return os.str();
}

void write_summary_csv(std::ostream& os, const SweepResult& sweep, const ExperimentConfig& cfg) {
  os << "# mesoent sweep summary\n";
  os << "# swept=" << sweep.swept << '\n';
  os << "# epsilon=" << format_number(cfg.epsilon) << '\n';
  if (sweep.swept != "temperature") os << "# temperature=" << format_number(cfg.temperature) << '\n';
  if (sweep.swept != "gamma") os << "# gamma=" << format_number(cfg.gamma) << '\n';
  os << "# squeeze_r=" << format_number(cfg.squeeze_r) << '\n';
  os << "# t_max=" << format_number(cfg.t_max) << '\n';
  os << "# t_steps=" << cfg.t_steps << '\n';
  os << "# lifetime=largest grid time with E > " << format_number(kEntangledThreshold) << '\n';
  os << sweep.swept << ",max_E,lifetime\n";
  for (const auto& row : sweep.summary)
    os << format_number(row.value) << ',' << format_number(row.max_log_negativity) << ','
       << format_number(row.lifetime) << '\n';
}

std::string sweep_curve_filename(const SweepResult& sweep, std::size_t index) {
  return "curve_" + sweep.swept + "_" + format_number(sweep.summary.at(index).value) + ".csv";
}

std::vector<std::filesystem::path> write_sweep(const std::filesystem::path& dir, const SweepResult& sweep,
                                               const ExperimentConfig& cfg) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < sweep.curves.size(); ++i) {
    const auto path = dir / sweep_curve_filename(sweep, i);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("output", "cannot write " + path.string());
    write_curve_csv(f, sweep.curves[i]);
    written.push_back(path);
  }
  const auto summary = dir / ("summary_" + sweep.swept + ".csv");
  std::ofstream f(summary, std::ios::binary);
  if (!f) throw ConfigError("output", "cannot write " + summary.string());
  write_summary_csv(f, sweep, cfg);
  written.push_back(summary);
  return written;
}

void write_plot_script(std::ostream& os, const std::vector<std::filesystem::path>& csv_files,
                       const std::string& title) {
  os << "# gnuplot script generated by mesoent\n";
  os << "set datafile separator \",\"\n";
  os << "set datafile commentschars \"#\"\n";
  os << "set title \"" << title << "\"\n";
  os << "set xlabel \"t\"\n";
  os << "set ylabel \"E(t)\"\n";
  os << "set key top right\n";
  os << "plot ";
  bool first = true;
  for (const auto& p : csv_files) {
    if (p.filename().string().rfind("summary_", 0) == 0) continue;
    if (!first) os << ", \\\n     ";
    os << '"' << p.string() << "\" every ::1 using 1:3 with lines title \"" << p.stem().string() << '"';
    first = false;
  }
  os << '\n';
}

std::vector<CltRow> clt_table(const ModelParams& p, const std::vector<std::uint64_t>& sizes) {
  const ThermalSiteState st = build_thermal_state(p);
  const auto& xs = fluctuation_observables();
  std::vector<CltRow> rows;
  for (int a = 0; a < 8; ++a) {
    const cd limit = weyl_expectation_limit(xs[a], st);
    for (const std::uint64_t n : sizes) {
      const cd finite = weyl_expectation_finite_N(xs[a], n, st);
      rows.push_back({a + 1, n, finite, limit, std::abs(finite - limit)});
    }
  }
  return rows;
}

void write_clt_csv(std::ostream& os, const ModelParams& p, const std::vector<CltRow>& rows) {
  os << "# mesoent quantum central limit check\n";
  os << "# epsilon=" << format_number(p.epsilon()) << '\n';
  os << "# temperature=" << format_number(p.temperature()) << '\n';
  os << "# eta=" << format_number(p.eta()) << '\n';
  os << "observable,N,re_finite,im_finite,re_limit,im_limit,abs_error\n";
  for (const auto& r : rows)
    os << r.observable << ',' << r.n << ',' << format_number(r.finite_n.real()) << ','
       << format_number(r.finite_n.imag()) << ',' << format_number(r.limit.real()) << ','
       << format_number(r.limit.imag()) << ',' << format_number(r.abs_error) << '\n';
}

}  // namespace mesoent
