// Command-line front end: parameter sweeps over the chain observables with
// figure-ready CSV output.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qising/cross_correlator.hpp"
#include "qising/ed_oracle.hpp"
#include "qising/errors.hpp"
#include "qising/observables.hpp"
#include "qising/scaling.hpp"
#include "qising/superposition.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_value(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::runtime_error("cannot open output file: " + path);
      }
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void comment(const std::string& text) { stream() << "# " << text << "\n"; }

  void header(const std::vector<std::string>& columns) { line(columns); }

  void row(const std::vector<std::string>& cells) { line(cells); }

 private:
  void line(const std::vector<std::string>& cells) {
    std::ostream& out = stream();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ",";
      out << cells[i];
    }
    out << "\n";
  }

  std::ofstream file_;
};

void maybe_stamp(CsvWriter& csv, bool stamp) {
  if (!stamp) return;
  const std::time_t now = std::time(nullptr);
  char buffer[64];
  std::strftime(buffer, sizeof(buffer), "%F %T", std::gmtime(&now));
  csv.comment(std::string("generated: ") + buffer);
}

// Dispatches sweep points to a small worker pool. The first exception a
// worker raises is rethrown on the calling thread once the pool drains.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct CommonOptions {
  std::string out;
  double tol = 1e-4;
  int threads = default_threads();
  int r_cap = 4096;
  bool stamp = false;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--out", common.out, "output path (default: stdout)");
  cmd->add_option("--tol", common.tol, "convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", common.threads, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--r-cap", common.r_cap,
                  "largest separation tried by the correlator")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--stamp", common.stamp, "write a timestamp comment line");
}

// ---------------------------------------------------------------------------
// fig3: conditional and phase-averaged transverse magnetization vs phase
// ---------------------------------------------------------------------------

struct Fig3Config {
  int n_sites = 100;
  double g = 1.0;
  double delta = 0.05;
  double c_up = 0.5;
  double c_down = std::sqrt(3.0 / 4.0);
  int phase_points = 201;
  CommonOptions common;
};

int run_fig3(const Fig3Config& cfg) {
  qising::ChainSpec{cfg.n_sites, cfg.g, cfg.delta, 0.0}.validate();
  if (cfg.phase_points < 2) {
    throw std::invalid_argument("fig3: need at least 2 phase points");
  }
  const qising::CrossObservable mz =
      qising::mz_observable(cfg.n_sites, cfg.g, cfg.delta);
  const qising::CentralSpinAmplitudes base{cfg.c_up, cfg.c_down, 0.0};
  base.validate();
  const qising::PhaseAverage averaged = qising::phase_average(mz, base);
  const double sd = std::sqrt(averaged.variance);

  CsvWriter csv(cfg.common.out);
  csv.comment("qising fig3");
  std::ostringstream config;
  config << "n_sites=" << cfg.n_sites << " g=" << format_value(cfg.g)
         << " delta=" << format_value(cfg.delta)
         << " c_up=" << format_value(cfg.c_up)
         << " c_down=" << format_value(cfg.c_down)
         << " phase_points=" << cfg.phase_points;
  csv.comment(config.str());
  csv.comment("fidelity=" + format_value(mz.fidelity) +
              " mz_mean=" + format_value(averaged.mean) +
              " mz_sd=" + format_value(sd));
  maybe_stamp(csv, cfg.common.stamp);
  csv.header({"delta_phase", "Mz_conditional", "Mz_mean", "Mz_mean_plus_sd",
              "Mz_mean_minus_sd"});
  for (int i = 0; i < cfg.phase_points; ++i) {
    const double phase = 2.0 * kPi * i / (cfg.phase_points - 1);
    const double value = qising::expectation_conditional(
        mz, {cfg.c_up, cfg.c_down, phase});
    csv.row({format_value(phase), format_value(value),
             format_value(averaged.mean), format_value(averaged.mean + sd),
             format_value(averaged.mean - sd)});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fig4: spontaneous-magnetization band across the transition
// ---------------------------------------------------------------------------

struct Fig4Config {
  int n_sites = 100;  // enters through the fidelity normalizing the band
  double delta = 0.05;
  double c_up = 1.0 / std::sqrt(2.0);
  double c_down = 1.0 / std::sqrt(2.0);
  double g_min = 0.8;
  double g_max = 1.2;
  int g_points = 21;
  CommonOptions common;
};

int run_fig4(const Fig4Config& cfg) {
  qising::ChainSpec{cfg.n_sites, cfg.g_min, cfg.delta, 0.0}.validate();
  if (cfg.g_points < 2 || cfg.g_max <= cfg.g_min) {
    throw std::invalid_argument("fig4: invalid g grid");
  }
  qising::CentralSpinAmplitudes{cfg.c_up, cfg.c_down, 0.0}.validate();

  struct Row {
    double g = 0.0;
    double standard = 0.0;
    double upper = 0.0;
    double lower = 0.0;
    bool converged = true;
  };
  std::vector<Row> rows(cfg.g_points);
  qising::CorrelatorOptions correlator;
  correlator.r_cap = cfg.common.r_cap;

  parallel_for(cfg.g_points, cfg.common.threads, [&](int i) {
    Row& row = rows[i];
    row.g = cfg.g_min + (cfg.g_max - cfg.g_min) * i / (cfg.g_points - 1);
    const double mx_plus = qising::mx_diag_thermo(row.g + cfg.delta);
    const double mx_minus = qising::mx_diag_thermo(row.g - cfg.delta);
    row.standard =
        cfg.c_up * cfg.c_up * mx_plus + cfg.c_down * cfg.c_down * mx_minus;
    try {
      const qising::MxCrossResult cross =
          qising::mx_cross(row.g, cfg.delta, cfg.common.tol, correlator);
      qising::CrossObservable obs;
      obs.o_pp = mx_plus;
      obs.o_mm = mx_minus;
      obs.fidelity = qising::fidelity(cfg.n_sites, row.g, cfg.delta);
      obs.o_pm = obs.fidelity * cross.value;
      const double at_zero = qising::expectation_conditional(
          obs, {cfg.c_up, cfg.c_down, 0.0});
      const double at_pi = qising::expectation_conditional(
          obs, {cfg.c_up, cfg.c_down, kPi});
      row.upper = std::max(at_zero, at_pi);
      row.lower = std::min(at_zero, at_pi);
    } catch (const qising::convergence_error&) {
      row.converged = false;
      row.upper = row.lower = std::numeric_limits<double>::quiet_NaN();
    }
  });

  CsvWriter csv(cfg.common.out);
  csv.comment("qising fig4");
  std::ostringstream config;
  config << "n_sites=" << cfg.n_sites << " delta=" << format_value(cfg.delta)
         << " c_up=" << format_value(cfg.c_up)
         << " c_down=" << format_value(cfg.c_down)
         << " g_min=" << format_value(cfg.g_min)
         << " g_max=" << format_value(cfg.g_max) << " g_points=" << cfg.g_points
         << " tol=" << format_value(cfg.common.tol)
         << " r_cap=" << cfg.common.r_cap;
  csv.comment(config.str());
  maybe_stamp(csv, cfg.common.stamp);
  csv.header({"g", "Mx_standard", "Mx_upper", "Mx_lower", "status"});
  for (const Row& row : rows) {
    csv.row({format_value(row.g), format_value(row.standard),
             format_value(row.upper), format_value(row.lower),
             row.converged ? "ok" : "convergence-failure"});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fig5-upper / fig5-lower: critical scaling of the cross magnetization
// ---------------------------------------------------------------------------

struct Fig5UpperConfig {
  double g = 1.0;
  std::vector<double> deltas = {0.005, 0.01, 0.02, 0.04};
  std::string fit_from;  // fit a previously written sweep instead of computing
  CommonOptions common;
};

int run_fig5_upper(const Fig5UpperConfig& cfg) {
  if (!cfg.fit_from.empty()) {
    const std::vector<qising::ScalingSample> samples =
        qising::read_beta_samples(cfg.fit_from);
    const qising::PowerLawFit fit = qising::fit_beta(samples);
    CsvWriter out(cfg.common.out);
    out.comment("qising fig5-upper fit of " + cfg.fit_from);
    out.stream() << "slope=" << format_value(fit.slope)
                 << " stderr=" << format_value(fit.slope_stderr)
                 << " r_squared=" << format_value(fit.r_squared)
                 << " n_points=" << fit.n_points << "\n";
    return 0;
  }
  if (cfg.deltas.empty()) {
    throw std::invalid_argument("fig5-upper: empty delta grid");
  }
  struct Row {
    double delta = 0.0;
    double value = 0.0;
    int r_used = 0;
  };
  std::vector<Row> rows(cfg.deltas.size());
  qising::CorrelatorOptions correlator;
  correlator.r_cap = cfg.common.r_cap;
  parallel_for(static_cast<int>(cfg.deltas.size()), cfg.common.threads,
               [&](int i) {
                 const qising::MxCrossResult mx = qising::mx_cross(
                     cfg.g, cfg.deltas[i], cfg.common.tol, correlator);
                 rows[i] = {cfg.deltas[i], mx.value, mx.r_used};
               });

  CsvWriter csv(cfg.common.out);
  csv.comment("qising fig5-upper");
  std::ostringstream config;
  config << "g=" << format_value(cfg.g) << " tol=" << format_value(cfg.common.tol)
         << " r_cap=" << cfg.common.r_cap;
  csv.comment(config.str());
  if (rows.size() >= 4) {
    std::vector<qising::ScalingSample> samples;
    for (const Row& row : rows) {
      samples.push_back({0.0, row.delta, row.value, std::nullopt});
    }
    try {
      const qising::PowerLawFit fit = qising::fit_beta(samples);
      csv.comment("fit: slope=" + format_value(fit.slope) +
                  " stderr=" + format_value(fit.slope_stderr) +
                  " r_squared=" + format_value(fit.r_squared));
    } catch (const std::invalid_argument&) {
      // grid unsuitable for the exponent fit; data rows are still written
    }
  }
  maybe_stamp(csv, cfg.common.stamp);
  csv.header({"delta", "Mx_cross_F", "r_used"});
  for (const Row& row : rows) {
    csv.row({format_value(row.delta), format_value(row.value),
             std::to_string(row.r_used)});
  }
  return 0;
}

struct Fig5LowerConfig {
  double delta = 0.01;
  double c_min = -2.0;
  double c_max = 0.9;
  int c_points = 30;
  CommonOptions common;
};

int run_fig5_lower(const Fig5LowerConfig& cfg) {
  if (cfg.c_points < 2 || cfg.c_max <= cfg.c_min || !(cfg.delta > 0.0)) {
    throw std::invalid_argument("fig5-lower: invalid grid");
  }
  struct Row {
    double c = 0.0;
    double b = 0.0;
    bool converged = true;
  };
  std::vector<Row> rows(cfg.c_points);
  qising::CorrelatorOptions correlator;
  correlator.r_cap = cfg.common.r_cap;
  parallel_for(cfg.c_points, cfg.common.threads, [&](int i) {
    Row& row = rows[i];
    row.c = cfg.c_min + (cfg.c_max - cfg.c_min) * i / (cfg.c_points - 1);
    try {
      row.b = qising::scaling_function(row.c, cfg.delta, cfg.common.tol,
                                       correlator);
    } catch (const qising::convergence_error&) {
      row.converged = false;
      row.b = std::numeric_limits<double>::quiet_NaN();
    }
  });

  CsvWriter csv(cfg.common.out);
  csv.comment("qising fig5-lower");
  std::ostringstream config;
  config << "delta=" << format_value(cfg.delta)
         << " c_min=" << format_value(cfg.c_min)
         << " c_max=" << format_value(cfg.c_max) << " c_points=" << cfg.c_points
         << " tol=" << format_value(cfg.common.tol)
         << " r_cap=" << cfg.common.r_cap;
  csv.comment(config.str());
  maybe_stamp(csv, cfg.common.stamp);
  csv.header({"c", "B", "status"});
  for (const Row& row : rows) {
    csv.row({format_value(row.c), format_value(row.b),
             row.converged ? "ok" : "convergence-failure"});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fidelity-scaling: log F over (N, delta) grids
// ---------------------------------------------------------------------------

struct FidelityScalingConfig {
  double g = 1.0;
  std::vector<int> n_grid = {64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  std::vector<double> deltas = {1e-4, 1e-3, 1e-2, 5e-2};
  CommonOptions common;
};

int run_fidelity_scaling(const FidelityScalingConfig& cfg) {
  if (cfg.n_grid.empty() || cfg.deltas.empty()) {
    throw std::invalid_argument("fidelity-scaling: empty grid");
  }
  CsvWriter csv(cfg.common.out);
  csv.comment("qising fidelity-scaling");
  std::ostringstream config;
  config << "g=" << format_value(cfg.g) << " n_points=" << cfg.n_grid.size()
         << " delta_points=" << cfg.deltas.size();
  csv.comment(config.str());
  maybe_stamp(csv, cfg.common.stamp);
  csv.header({"N", "delta", "logF"});
  for (double delta : cfg.deltas) {
    for (int n : cfg.n_grid) {
      qising::ChainSpec{n, cfg.g, delta, 0.0}.validate();
      csv.row({std::to_string(n), format_value(delta),
               format_value(qising::log_fidelity(n, cfg.g, delta))});
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// oracle-check: free-fermion formulas against dense diagonalization
// ---------------------------------------------------------------------------

struct OracleCheckConfig {
  std::vector<int> n_grid = {4, 6, 8, 10};
  int points = 20;
  unsigned seed = 12345;
  double tol = 1e-8;
  CommonOptions common;
};

int run_oracle_check(const OracleCheckConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> g_dist(0.0, 2.0);
  std::uniform_real_distribution<double> d_dist(0.01, 0.3);

  struct Quantity {
    std::string name;
    double max_err = 0.0;
  };
  std::vector<Quantity> quantities = {
      {"fidelity"}, {"mz_pp"}, {"mz_mm"}, {"mz_pm"},
      {"cx_pp"},    {"cx_mm"}, {"cx_pm"}, {"energy_per_site"},
  };

  for (int point = 0; point < cfg.points; ++point) {
    const double g = g_dist(rng);
    const double delta = d_dist(rng);
    for (int n : cfg.n_grid) {
      qising::DenseState plus = qising::ground_state(n, g + delta, 0.0);
      qising::DenseState minus = qising::ground_state(n, g - delta, 0.0);
      qising::align_pair(plus, minus);
      const double f = qising::overlap(plus, minus).real();
      auto track = [&](const std::string& name, double got, double want) {
        for (Quantity& q : quantities) {
          if (q.name == name) {
            q.max_err = std::max(q.max_err, std::abs(got - want));
          }
        }
      };
      using qising::OpSpec;
      track("fidelity", f, qising::fidelity(n, g, delta));
      track("mz_pp", qising::cross_expectation(OpSpec::sz(0), plus, plus).real(),
            qising::mz_diag_finite(n, g + delta));
      track("mz_mm", qising::cross_expectation(OpSpec::sz(0), minus, minus).real(),
            qising::mz_diag_finite(n, g - delta));
      track("mz_pm", qising::cross_expectation(OpSpec::sz(0), plus, minus).real(),
            qising::mz_cross_spectral(n, g, delta).o_pm);
      track("cx_pp",
            qising::cross_expectation(OpSpec::sxsx(0, 1), plus, plus).real(),
            qising::cx_diag_finite(n, g + delta));
      track("cx_mm",
            qising::cross_expectation(OpSpec::sxsx(0, 1), minus, minus).real(),
            qising::cx_diag_finite(n, g - delta));
      track("cx_pm",
            qising::cross_expectation(OpSpec::sxsx(0, 1), plus, minus).real(),
            qising::cx_cross_energy(n, g, delta).o_pm);
      track("energy_per_site", plus.energy / n,
            qising::energy_per_site_finite(n, g + delta));
    }
  }

  CsvWriter out(cfg.common.out);
  std::ostringstream config;
  config << "oracle-check n_grid={";
  for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
    config << (i ? "," : "") << cfg.n_grid[i];
  }
  config << "} points=" << cfg.points << " seed=" << cfg.seed
         << " tol=" << format_value(cfg.tol);
  out.comment(config.str());
  bool all_pass = true;
  for (const Quantity& q : quantities) {
    const bool pass = q.max_err < cfg.tol;
    all_pass = all_pass && pass;
    out.stream() << (pass ? "PASS" : "FAIL") << " " << q.name
                 << " max_abs_err=" << format_value(q.max_err) << " (tol "
                 << format_value(cfg.tol) << ")\n";
  }
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// observables: single-point quadruple query
// ---------------------------------------------------------------------------

struct ObservablesConfig {
  std::string op = "mz";
  int n_sites = 0;  // 0 means thermodynamic limit
  double g = 1.0;
  double delta = 0.05;
  CommonOptions common;
};

int run_observables(const ObservablesConfig& cfg) {
  CsvWriter out(cfg.common.out);
  std::ostringstream config;
  config << "observables op=" << cfg.op << " g=" << format_value(cfg.g)
         << " delta=" << format_value(cfg.delta);
  if (cfg.n_sites > 0) config << " n_sites=" << cfg.n_sites;
  out.comment(config.str());
  std::ostream& s = out.stream();

  auto print = [&](const char* name, double v) {
    s << name << "=" << format_value(v) << "\n";
  };

  if (cfg.op == "mz" || cfg.op == "cx") {
    if (cfg.n_sites > 0) {
      const qising::CrossObservable obs =
          cfg.op == "mz" ? qising::mz_observable(cfg.n_sites, cfg.g, cfg.delta)
                         : qising::cx_observable(cfg.n_sites, cfg.g, cfg.delta);
      print("O_pp", obs.o_pp);
      print("O_mm", obs.o_mm);
      print("O_pm", obs.o_pm);
      print("F", obs.fidelity);
      print("O_pm_over_F", obs.o_pm_normalized());
    } else {
      const bool mz = cfg.op == "mz";
      print("O_pp", mz ? qising::mz_diag_thermo(cfg.g + cfg.delta)
                       : qising::cx_diag_thermo(cfg.g + cfg.delta));
      print("O_mm", mz ? qising::mz_diag_thermo(cfg.g - cfg.delta)
                       : qising::cx_diag_thermo(cfg.g - cfg.delta));
      if (cfg.delta > 0.0) {
        print("O_pm_over_F",
              mz ? qising::mz_cross_over_f_thermo(cfg.g, cfg.delta)
                 : qising::cx_cross_over_f_thermo(cfg.g, cfg.delta));
      }
      s << "F=0 (vanishes in the thermodynamic limit)\n";
    }
    return 0;
  }
  if (cfg.op == "mx") {
    print("O_pp", qising::mx_diag_thermo(cfg.g + cfg.delta));
    print("O_mm", qising::mx_diag_thermo(cfg.g - cfg.delta));
    qising::CorrelatorOptions correlator;
    correlator.r_cap = cfg.common.r_cap;
    if (cfg.delta > 0.0) {
      const qising::MxCrossResult mx =
          qising::mx_cross(cfg.g, cfg.delta, cfg.common.tol, correlator);
      print("O_pm_over_F", mx.value);
      s << "r_used=" << mx.r_used << "\n";
      if (cfg.n_sites > 0) {
        const double f = qising::fidelity(cfg.n_sites, cfg.g, cfg.delta);
        print("F", f);
        print("O_pm", f * mx.value);
      }
    }
    return 0;
  }
  throw std::invalid_argument("observables: op must be mz, cx or mx");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising ring in a central-spin magnetic field: superposition "
               "observables, cross correlators and critical scaling"};
  app.require_subcommand(1);

  Fig3Config fig3;
  CLI::App* fig3_cmd = app.add_subcommand(
      "fig3", "conditional and phase-averaged Mz against the relative phase");
  fig3_cmd->add_option("--n-sites", fig3.n_sites);
  fig3_cmd->add_option("--g", fig3.g);
  fig3_cmd->add_option("--delta", fig3.delta);
  fig3_cmd->add_option("--c-up", fig3.c_up);
  fig3_cmd->add_option("--c-down", fig3.c_down);
  fig3_cmd->add_option("--phase-points", fig3.phase_points);
  add_common(fig3_cmd, fig3.common);

  Fig4Config fig4;
  CLI::App* fig4_cmd = app.add_subcommand(
      "fig4", "spontaneous-magnetization band across the transition");
  fig4_cmd->add_option("--n-sites", fig4.n_sites);
  fig4_cmd->add_option("--delta", fig4.delta);
  fig4_cmd->add_option("--c-up", fig4.c_up);
  fig4_cmd->add_option("--c-down", fig4.c_down);
  fig4_cmd->add_option("--g-min", fig4.g_min);
  fig4_cmd->add_option("--g-max", fig4.g_max);
  fig4_cmd->add_option("--g-points", fig4.g_points);
  add_common(fig4_cmd, fig4.common);

  Fig5UpperConfig fig5u;
  CLI::App* fig5u_cmd = app.add_subcommand(
      "fig5-upper", "Mx cross term against delta at the critical field");
  fig5u_cmd->add_option("--g", fig5u.g);
  fig5u_cmd->add_option("--deltas", fig5u.deltas);
  fig5u_cmd->add_option("--fit-from", fig5u.fit_from,
                        "fit an existing sweep CSV instead of computing");
  add_common(fig5u_cmd, fig5u.common);

  Fig5LowerConfig fig5l;
  CLI::App* fig5l_cmd =
      app.add_subcommand("fig5-lower", "scaling function B(c) at fixed delta");
  fig5l_cmd->add_option("--delta", fig5l.delta);
  fig5l_cmd->add_option("--c-min", fig5l.c_min);
  fig5l_cmd->add_option("--c-max", fig5l.c_max);
  fig5l_cmd->add_option("--c-points", fig5l.c_points);
  add_common(fig5l_cmd, fig5l.common);

  FidelityScalingConfig fscaling;
  CLI::App* fscaling_cmd =
      app.add_subcommand("fidelity-scaling", "log F over (N, delta) grids");
  fscaling_cmd->add_option("--g", fscaling.g);
  fscaling_cmd->add_option("--n-grid", fscaling.n_grid);
  fscaling_cmd->add_option("--deltas", fscaling.deltas);
  add_common(fscaling_cmd, fscaling.common);

  OracleCheckConfig oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle-check", "free-fermion formulas against dense diagonalization");
  oracle_cmd->add_option("--n-grid", oracle.n_grid);
  oracle_cmd->add_option("--points", oracle.points);
  oracle_cmd->add_option("--seed", oracle.seed);
  oracle_cmd->add_option("--tol-abs", oracle.tol);
  add_common(oracle_cmd, oracle.common);

  ObservablesConfig observables;
  CLI::App* observables_cmd = app.add_subcommand(
      "observables", "single-point cross-observable quadruple");
  observables_cmd->add_option("--op", observables.op)
      ->check(CLI::IsMember({"mz", "cx", "mx"}));
  observables_cmd->add_option("--n-sites", observables.n_sites);
  observables_cmd->add_option("--g", observables.g);
  observables_cmd->add_option("--delta", observables.delta);
  add_common(observables_cmd, observables.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fig3_cmd->parsed()) return run_fig3(fig3);
    if (fig4_cmd->parsed()) return run_fig4(fig4);
    if (fig5u_cmd->parsed()) return run_fig5_upper(fig5u);
    if (fig5l_cmd->parsed()) return run_fig5_lower(fig5l);
    if (fscaling_cmd->parsed()) return run_fidelity_scaling(fscaling);
    if (oracle_cmd->parsed()) return run_oracle_check(oracle);
    if (observables_cmd->parsed()) return run_observables(observables);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const qising::convergence_error& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
