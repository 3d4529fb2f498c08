#include "qising/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qising/observables.hpp"

namespace qising {

PowerLawFit power_law_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("power_law_fit: need >= 2 paired points");
  }
  const int n = static_cast<int>(x.size());
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("power_law_fit: samples must be positive");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("power_law_fit: degenerate abscissa grid");
  }
  PowerLawFit fit;
  fit.n_points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.slope_stderr =
      n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
  return fit;
}

PowerLawFit fit_beta(const std::vector<ScalingSample>& samples) {
  if (samples.size() < 4) {
    throw std::invalid_argument("fit_beta: need at least 4 delta points");
  }
  std::vector<double> deltas, values;
  for (const ScalingSample& s : samples) {
    if (std::abs(s.c) > 1e-12) {
      throw std::invalid_argument("fit_beta: samples must sit at c = 0");
    }
    deltas.push_back(s.delta);
    values.push_back(s.value);
  }
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  if (!(*lo > 0.0) || *hi / *lo < 4.0) {
    throw std::invalid_argument("fit_beta: degenerate delta grid");
  }
  return power_law_fit(deltas, values);
}

std::vector<ScalingSample> read_beta_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("read_beta_samples: cannot open " + path);
  }
  std::vector<ScalingSample> samples;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column names
      continue;
    }
    std::istringstream cells(line);
    std::string delta_cell, value_cell;
    if (!std::getline(cells, delta_cell, ',') ||
        !std::getline(cells, value_cell, ',')) {
      throw std::invalid_argument("read_beta_samples: malformed row: " + line);
    }
    samples.push_back({0.0, std::stod(delta_cell), std::stod(value_cell),
                       std::nullopt});
  }
  if (samples.empty()) {
    throw std::invalid_argument("read_beta_samples: no data rows in " + path);
  }
  return samples;
}

double scaling_function(double c, double delta, double tolerance,
                        const CorrelatorOptions& options) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("scaling_function: delta must be > 0");
  }
  const double g = kCriticalField + c * delta;
  const MxCrossResult mx = mx_cross(g, delta, tolerance, options);
  return mx.value / std::pow(delta, kBetaExponent);
}

namespace {

// log(-log F) samples over an N grid at fixed delta, or a delta grid at
// fixed N. Fits run on -log F, which is positive for every delta > 0.
PowerLawFit fit_vs_n(const std::vector<int>& n_grid, double delta, double g) {
  std::vector<double> x, y;
  for (int n : n_grid) {
    x.push_back(static_cast<double>(n));
    y.push_back(-log_fidelity(n, g, delta));
  }
  return power_law_fit(x, y);
}

PowerLawFit fit_vs_delta(const std::vector<double>& delta_grid, int n, double g) {
  std::vector<double> x, y;
  for (double d : delta_grid) {
    x.push_back(d);
    y.push_back(-log_fidelity(n, g, d));
  }
  return power_law_fit(x, y);
}

void warn_if_mixed(const char* label, double n_delta_min, double n_delta_max,
                   std::vector<std::string>& warnings) {
  // The crossover band N delta^{d nu} in [0.3, 3] contaminates both slopes.
  const double lo = 0.3, hi = 3.0;
  if ((n_delta_min > lo && n_delta_min < hi) ||
      (n_delta_max > lo && n_delta_max < hi) ||
      (n_delta_min <= lo && n_delta_max >= hi)) {
    std::ostringstream msg;
    msg << label << ": grid crosses N*delta in [0.3, 3] (spans "
        << n_delta_min << " .. " << n_delta_max << "), slopes may be mixed";
    warnings.push_back(msg.str());
  }
}

}  // namespace

FidelityScalingReport fidelity_regimes(const FidelityRegimeGrids& grids) {
  FidelityScalingReport report;
  const double g_c = kCriticalField;

  report.n_slope_small_regime = fit_vs_n(grids.n_small, grids.delta_small, g_c);
  warn_if_mixed("n_slope_small_regime",
                grids.n_small.front() * grids.delta_small,
                grids.n_small.back() * grids.delta_small, report.warnings);

  report.n_slope_large_regime = fit_vs_n(grids.n_large, grids.delta_large, g_c);
  warn_if_mixed("n_slope_large_regime",
                grids.n_large.front() * grids.delta_large,
                grids.n_large.back() * grids.delta_large, report.warnings);

  report.delta_slope_small_regime =
      fit_vs_delta(grids.delta_grid_small, grids.n_for_delta_small, g_c);
  warn_if_mixed("delta_slope_small_regime",
                grids.n_for_delta_small * grids.delta_grid_small.front(),
                grids.n_for_delta_small * grids.delta_grid_small.back(),
                report.warnings);

  report.delta_slope_large_regime =
      fit_vs_delta(grids.delta_grid_large, grids.n_for_delta_large, g_c);
  warn_if_mixed("delta_slope_large_regime",
                grids.n_for_delta_large * grids.delta_grid_large.front(),
                grids.n_for_delta_large * grids.delta_grid_large.back(),
                report.warnings);

  report.delta_slope_far_from_critical =
      fit_vs_delta(grids.delta_grid_far, grids.n_far, grids.g_far);

  return report;
}

}  // namespace qising
