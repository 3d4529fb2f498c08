// Acceptance suite: end-to-end checks of the published numbers and the
// structural identities, one printed line per criterion. Exits nonzero if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qising/cross_correlator.hpp"
#include "qising/ed_oracle.hpp"
#include "qising/errors.hpp"
#include "qising/observables.hpp"
#include "qising/scaling.hpp"
#include "qising/superposition.hpp"
#include "test_oracles.hpp"

using namespace qising;

namespace {

using clock_type = std::chrono::steady_clock;

int failures = 0;

void report(int criterion, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %s [%.2f s]\n", pass ? "PASS" : "FAIL",
              criterion, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

// 1. Figure-3 point: fidelity, phase-averaged magnetization and its spread.
void criterion_1() {
  const auto start = clock_type::now();
  const int n = 100;
  const double g = 1.0, delta = 0.05;
  const CentralSpinAmplitudes amps{0.5, std::sqrt(3.0 / 4.0), 0.0};
  const CrossObservable mz = mz_observable(n, g, delta);
  const PhaseAverage averaged = phase_average(mz, amps);
  const double sd = std::sqrt(averaged.variance);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(mz.fidelity - 0.41) < 5e-3 &&
                    std::abs(averaged.mean - 0.60) < 5e-3 &&
                    std::abs(sd - 8.9e-3) < 3e-4 && elapsed < 1.0;
  report(1, pass,
         fmt("figure-3 point: F=%.5f (0.41+-0.005), mean Mz=%.5f "
             "(0.60+-0.005), sd=%.3e (8.9e-3+-3e-4)",
             mz.fidelity, averaged.mean, sd),
         elapsed);
}

// 2. Free-fermion formulas against dense diagonalization on random points.
void criterion_2() {
  const auto start = clock_type::now();
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> g_dist(0.0, 2.0);
  std::uniform_real_distribution<double> d_dist(0.01, 0.3);
  double max_err = 0.0;
  for (int point = 0; point < 20; ++point) {
    const double g = g_dist(rng);
    const double delta = d_dist(rng);
    for (int n : {4, 6, 8, 10}) {
      DenseState plus = ground_state(n, g + delta, 0.0);
      DenseState minus = ground_state(n, g - delta, 0.0);
      align_pair(plus, minus);
      auto update = [&max_err](double got, double want) {
        max_err = std::max(max_err, std::abs(got - want));
      };
      update(overlap(plus, minus).real(), fidelity(n, g, delta));
      update(cross_expectation(OpSpec::sz(0), plus, plus).real(),
             mz_diag_finite(n, g + delta));
      update(cross_expectation(OpSpec::sz(0), minus, minus).real(),
             mz_diag_finite(n, g - delta));
      update(cross_expectation(OpSpec::sz(0), plus, minus).real(),
             mz_cross_spectral(n, g, delta).o_pm);
      update(cross_expectation(OpSpec::sxsx(0, 1), plus, plus).real(),
             cx_diag_finite(n, g + delta));
      update(cross_expectation(OpSpec::sxsx(0, 1), minus, minus).real(),
             cx_diag_finite(n, g - delta));
      update(cross_expectation(OpSpec::sxsx(0, 1), plus, minus).real(),
             cx_cross_energy(n, g, delta).o_pm);
      update(plus.energy / n, energy_per_site_finite(n, g + delta));
      update(minus.energy / n, energy_per_site_finite(n, g - delta));
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = max_err < 1e-8 && elapsed < 120.0;
  report(2, pass,
         fmt("oracle equivalence over N={4,6,8,10} x 20 points: "
             "max_abs_err=%.2e (tol 1e-8)",
             max_err),
         elapsed);
}

// 3. Spectral-sum and energy-difference routes to Mz^{+-}.
void criterion_3() {
  const auto start = clock_type::now();
  double max_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double g = 0.1 + 1.9 * i / 49.0;
    const double delta = 0.01 + 0.19 * ((i * 7) % 50) / 49.0;
    const int n = 16 << (i % 4);
    const CrossPair spectral = mz_cross_spectral(n, g, delta);
    const CrossPair energy = mz_cross_energy(n, g, delta);
    max_rel = std::max(max_rel, std::abs(spectral.o_pm - energy.o_pm) /
                                    std::max(std::abs(spectral.o_pm), 1e-300));
  }
  const double elapsed = seconds_since(start);
  const bool pass = max_rel < 1e-10 && elapsed < 1.0;
  report(3, pass,
         fmt("dual-route identity on 50-point grid: max_rel=%.2e (tol 1e-10)",
             max_rel),
         elapsed);
}

// 4. Finite-N sums at N = 10^4 against the elliptic closed forms.
void criterion_4() {
  const auto start = clock_type::now();
  const int n = 10000;
  double max_err = 0.0;
  for (double g : {0.5, 0.7, 0.9, 0.945, 1.055, 1.1, 1.3, 1.5, 2.0}) {
    max_err = std::max(max_err, std::abs(mz_diag_finite(n, g) - mz_diag_thermo(g)));
    max_err = std::max(max_err, std::abs(energy_per_site_finite(n, g) -
                                         energy_per_site_thermo(g)));
  }
  const double elapsed = seconds_since(start);
  const bool pass = max_err < 1e-4 && elapsed < 10.0;
  report(4, pass,
         fmt("thermodynamic consistency at N=10^4, |g'-1|>0.05: "
             "max_abs_err=%.2e (tol 1e-4)",
             max_err),
         elapsed);
}

// 5. Critical exponent beta from the delta dependence at g = g_c.
void criterion_5() {
  const auto start = clock_type::now();
  std::vector<ScalingSample> samples;
  for (double delta : {0.005, 0.01, 0.02, 0.04}) {
    const MxCrossResult mx = mx_cross(1.0, delta, 1e-4);
    samples.push_back({0.0, delta, mx.value, std::nullopt});
  }
  const PowerLawFit fit = fit_beta(samples);
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(fit.slope - 0.125) < 0.01 && fit.r_squared > 0.999;
  report(5, pass,
         fmt("beta exponent: slope=%.4f (0.125+-0.01), R^2=%.6f", fit.slope,
             fit.r_squared),
         elapsed);
}

// 6. Scaling-function properties: collapse, deep-ferromagnet limit, and the
// disappearance of order for c > 1.
void criterion_6() {
  const auto start = clock_type::now();
  double max_collapse = 0.0;
  std::vector<double> b_values;
  for (double c : {-2.0, -1.5, -1.0, -0.5, 0.0, 0.5}) {
    const double b1 = scaling_function(c, 0.01);
    const double b2 = scaling_function(c, 0.02);
    b_values.push_back(b1);
    max_collapse = std::max(max_collapse, std::abs(b1 - b2) / std::abs(b1));
  }
  // soft property, reported but not gated: B decreases toward the boundary
  bool monotone = true;
  for (std::size_t i = 1; i < b_values.size(); ++i) {
    monotone = monotone && b_values[i] < b_values[i - 1];
  }
  const double b_deep = scaling_function(-20.0, 0.002);
  const double deep_target = std::pow(40.0, 0.125);
  const double deep_rel = std::abs(b_deep - deep_target) / deep_target;
  const MxCrossResult disordered = mx_cross(1.02, 0.01, 1e-4);
  const double elapsed = seconds_since(start);
  const bool pass =
      max_collapse < 0.02 && deep_rel < 0.01 && disordered.value < 1e-3;
  report(6, pass,
         fmt("B(c): collapse delta=0.01 vs 0.02 max=%.4f (tol 0.02), "
             "B(-20)=%.4f vs %.4f (tol 1%%), Mx_F(c=2)=%.1e (tol 1e-3), "
             "monotone on grid: %s",
             max_collapse, b_deep, deep_target, disordered.value,
             monotone ? "yes" : "no"),
         elapsed);
}

// 7. Convergence scales near the critical point match the reported sizes.
void criterion_7() {
  const auto start = clock_type::now();
  const MxCrossResult below = mx_cross(0.995, 0.01, 1e-4);
  const MxCrossResult above = mx_cross(1.005, 0.01, 1e-4);
  const double elapsed = seconds_since(start);
  const bool pass = below.r_used <= 1024 && above.r_used <= 4096;
  report(7, pass,
         fmt("convergence scales: R(g=0.995)=%d (<=1024), R(g=1.005)=%d "
             "(<=4096)",
             below.r_used, above.r_used),
         elapsed);
}

// 8. Fidelity-decay exponents in the two system-size regimes and far from
// the critical point.
void criterion_8() {
  const auto start = clock_type::now();
  const FidelityScalingReport rep = fidelity_regimes();
  const double elapsed = seconds_since(start);
  const bool pass = std::abs(rep.n_slope_small_regime.slope - 2.0) < 0.1 &&
                    std::abs(rep.n_slope_large_regime.slope - 1.0) < 0.05 &&
                    std::abs(rep.delta_slope_far_from_critical.slope - 2.0) <
                        0.05 &&
                    rep.warnings.empty() && elapsed < 30.0;
  report(8, pass,
         fmt("fidelity regimes: N-slopes %.3f (2+-0.1) / %.3f (1+-0.05), "
             "far-field delta-slope %.3f (2+-0.05)",
             rep.n_slope_small_regime.slope, rep.n_slope_large_regime.slope,
             rep.delta_slope_far_from_critical.slope),
         elapsed);
}

// 9. Composite-model structure at N=8.
void criterion_9() {
  const auto start = clock_type::now();
  const CompositeSectorReport a = composite_sector_check(8, 1.0, 0.05);
  const CompositeSectorReport b = composite_sector_check(8, 0.5, 0.6);
  const double elapsed = seconds_since(start);
  const bool pass = a.pass() && b.pass();
  report(9, pass,
         fmt("composite sectors: commutator %.1e/%.1e (<1e-12), deficits "
             "%.1e/%.1e/%.1e/%.1e (<1e-10)",
             a.commutator_max, b.commutator_max, a.overlap_deficit_up,
             a.overlap_deficit_down, b.overlap_deficit_up,
             b.overlap_deficit_down),
         elapsed);
}

// 10. Structural property suite: antisymmetry, Pfaffian brute force,
// phase-average quadrature identity, gauge invariance.
void criterion_10() {
  const auto start = clock_type::now();
  bool pass = true;
  std::string detail = "properties:";

  const ContractionKernel table = kernel(1.0, 0.05, 16);
  double max_asym = 0.0;
  for (int r : {1, 4, 16}) {
    const ToeplitzBlockMatrix a = assemble(table, r);
    max_asym = std::max(
        max_asym, (a.entries + a.entries.transpose()).cwiseAbs().maxCoeff());
  }
  pass = pass && max_asym < 1e-12;
  detail += fmt(" antisym=%.1e", max_asym);

  double max_pf = 0.0;
  for (int r : {1, 2, 3}) {
    const ToeplitzBlockMatrix a = assemble(table, r);
    const double pf = oracle::pfaffian_enumerate(a.entries);
    max_pf = std::max(max_pf, std::abs(cxx_cross(a).value - std::abs(pf)));
  }
  pass = pass && max_pf < 1e-12;
  detail += fmt(" pfaffian=%.1e", max_pf);

  const CrossObservable mz = mz_observable(100, 1.0, 0.05);
  const CentralSpinAmplitudes amps{0.5, std::sqrt(3.0 / 4.0), 0.0};
  const PhaseAverage closed = phase_average(mz, amps);
  const int n_quad = 1 << 15;
  double weight = 0.0, mean = 0.0;
  for (int i = 0; i < n_quad; ++i) {
    const double phase = 2.0 * std::numbers::pi * i / n_quad;
    const CentralSpinAmplitudes at{amps.c_up, amps.c_down, phase};
    const double p_plus = measure_probability(at, mz.fidelity).p_plus;
    weight += p_plus;
    mean += p_plus * expectation_conditional(mz, at);
  }
  const double quadrature_gap = std::abs(mean / weight - closed.mean);
  pass = pass && quadrature_gap < 1e-10;
  detail += fmt(" phase-avg=%.1e", quadrature_gap);

  DenseState a = ground_state(6, 1.2, 0.0);
  DenseState b = ground_state(6, 0.8, 0.0);
  align_pair(a, b);
  DenseState rotated = b;
  rotated.amplitudes *= std::polar(1.0, 0.7);
  const double gauge_gap =
      std::abs(std::abs(overlap(a, rotated)) - std::abs(overlap(a, b))) +
      std::abs(std::abs(cross_expectation(OpSpec::sz(0), a, rotated)) -
               std::abs(cross_expectation(OpSpec::sz(0), a, b)));
  pass = pass && gauge_gap < 1e-12;
  detail += fmt(" gauge=%.1e", gauge_gap);

  report(10, pass, detail, seconds_since(start));
}

// 11. Figure-4 substitute: thermodynamic band with the qualitative features
// of the finite-system result, checked against N=12 diagonalization.
void criterion_11() {
  const auto start = clock_type::now();
  const double delta = 0.05;
  const double c_amp = 1.0 / std::sqrt(2.0);

  auto band = [&](double g, int n_fidelity, double& upper, double& lower,
                  double& standard) {
    const double mx_plus = mx_diag_thermo(g + delta);
    const double mx_minus = mx_diag_thermo(g - delta);
    standard = 0.5 * (mx_plus + mx_minus);
    CrossObservable obs;
    obs.o_pp = mx_plus;
    obs.o_mm = mx_minus;
    obs.fidelity = fidelity(n_fidelity, g, delta);
    obs.o_pm = obs.fidelity * mx_cross(g, delta, 1e-4).value;
    const double at_zero = expectation_conditional(obs, {c_amp, c_amp, 0.0});
    const double at_pi =
        expectation_conditional(obs, {c_amp, c_amp, std::numbers::pi});
    upper = std::max(at_zero, at_pi);
    lower = std::min(at_zero, at_pi);
  };

  double up_ferro = 0, lo_ferro = 0, std_ferro = 0;
  band(0.9, 100, up_ferro, lo_ferro, std_ferro);
  const bool ferro_ok = up_ferro - lo_ferro > 0.05 &&
                        std_ferro < up_ferro && std_ferro > lo_ferro;

  double up_para = 0, lo_para = 0, std_para = 0;
  band(1.2, 100, up_para, lo_para, std_para);
  const bool para_ok = std_para == 0.0 && std::abs(up_para) < 1e-3 &&
                       std::abs(lo_para) < 1e-3;

  // band shrinks continuously just above g = 1 + delta
  double up_edge = 0, lo_edge = 0, std_edge = 0;
  band(1.06, 100, up_edge, lo_edge, std_edge);
  const bool edge_ok = up_edge - lo_edge < 0.5 * (up_ferro - lo_ferro);

  // N=12 diagonalization with a symmetry-breaking field reproduces the band
  // up to finite-size effects. Deep in the ordered phase the parity-doublet
  // splitting (~g_eff^N) is far below the field coupling N h Mx, so h can
  // polarize the state without distorting it; the reference band uses the
  // N=12 fidelity for a like-for-like comparison.
  const int n_ed = 12;
  const double g_ed = 0.5, h = 1e-3;
  DenseState plus = ground_state(n_ed, g_ed + delta, h);
  DenseState minus = ground_state(n_ed, g_ed - delta, h);
  align_pair(plus, minus);
  CrossObservable ed;
  ed.o_pp = cross_expectation(OpSpec::sx(0), plus, plus).real();
  ed.o_mm = cross_expectation(OpSpec::sx(0), minus, minus).real();
  ed.o_pm = cross_expectation(OpSpec::sx(0), plus, minus).real();
  ed.fidelity = overlap(plus, minus).real();
  const double ed_up = std::max(
      expectation_conditional(ed, {c_amp, c_amp, 0.0}),
      expectation_conditional(ed, {c_amp, c_amp, std::numbers::pi}));
  const double ed_lo = std::min(
      expectation_conditional(ed, {c_amp, c_amp, 0.0}),
      expectation_conditional(ed, {c_amp, c_amp, std::numbers::pi}));
  double up_ref = 0, lo_ref = 0, std_ref = 0;
  band(g_ed, n_ed, up_ref, lo_ref, std_ref);
  const bool ed_ok =
      std::abs(ed_up - up_ref) < 0.1 && std::abs(ed_lo - lo_ref) < 0.1;

  const double elapsed = seconds_since(start);
  const bool pass = ferro_ok && para_ok && edge_ok && ed_ok;
  report(11, pass,
         fmt("figure-4 band: ferro width=%.3f, para width=%.1e, edge "
             "width=%.3f, N=12 band [%.3f,%.3f] vs [%.3f,%.3f]",
             up_ferro - lo_ferro, up_para - lo_para, up_edge - lo_edge, ed_lo,
             ed_up, lo_ref, up_ref),
         elapsed);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures;
}
