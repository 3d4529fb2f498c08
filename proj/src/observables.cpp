#include "qising/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qising {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this distance from g_eff = 0 the 1/g_eff prefactor of the Pfeuty
// form is replaced by its series limit Mz ~ g_eff/2.
constexpr double kMzSeriesWindow = 1e-6;

// Below this distance from g_eff = 1 the parameter chi rounds to 1 in double
// precision; the (1 - g_eff) K(chi) term vanishes in that limit and is
// dropped.
constexpr double kCriticalWindow = 1e-7;

void require_even(int n_sites, const char* who) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument(std::string(who) +
                                ": n_sites must be even and >= 2");
  }
}

void require_positive_delta(double delta, const char* who) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument(std::string(who) +
                                ": degenerate input, needs delta > 0");
  }
}

}  // namespace

double log_fidelity(int n_sites, double g, double delta) {
  require_even(n_sites, "log_fidelity");
  const ModeSet k = momenta(n_sites);
  const BogoliubovAngles plus = bogoliubov_angles(g + delta, k);
  const BogoliubovAngles minus = bogoliubov_angles(g - delta, k);
  // Both angles live in (0, pi), so |theta+ - theta-|/2 < pi/2 and every
  // cosine factor is strictly positive.
  return ((plus.theta - minus.theta) / 2.0).cos().log().sum();
}

double fidelity(int n_sites, double g, double delta) {
  return std::exp(log_fidelity(n_sites, g, delta));
}

double mz_diag_finite(int n_sites, double g_eff) {
  require_even(n_sites, "mz_diag_finite");
  const ModeSet k = momenta(n_sites);
  const BogoliubovAngles a = bogoliubov_angles(g_eff, k);
  return 2.0 * a.theta.cos().sum() / n_sites;
}

double mz_diag_thermo(double g_eff) {
  if (std::abs(g_eff) < kMzSeriesWindow) {
    return 0.5 * g_eff;
  }
  if (std::abs(g_eff - 1.0) < kCriticalWindow) {
    return 2.0 * elliptic_E(1.0) / (kPi * g_eff);
  }
  const double chi = pfeuty_chi(g_eff);
  double k = 0.0, e = 0.0;
  elliptic_KE(chi, k, e);
  return ((1.0 + g_eff) * e + (-1.0 + g_eff) * k) / (kPi * g_eff);
}

double cx_diag_finite(int n_sites, double g_eff) {
  return -energy_per_site_finite(n_sites, g_eff) -
         g_eff * mz_diag_finite(n_sites, g_eff);
}

double cx_diag_thermo(double g_eff) {
  if (std::abs(g_eff - 1.0) < kCriticalWindow) {
    return (1.0 + g_eff) * elliptic_E(1.0) / kPi;
  }
  const double chi = pfeuty_chi(g_eff);
  double k = 0.0, e = 0.0;
  elliptic_KE(chi, k, e);
  return ((1.0 + g_eff) * e + (1.0 - g_eff) * k) / kPi;
}

double mx_diag_thermo(double g_eff) {
  const double m8 = 1.0 - g_eff * g_eff;
  return m8 > 0.0 ? std::pow(m8, 0.125) : 0.0;
}

CrossPair mz_cross_spectral(int n_sites, double g, double delta) {
  require_even(n_sites, "mz_cross_spectral");
  const ModeSet k = momenta(n_sites);
  const BogoliubovAngles plus = bogoliubov_angles(g + delta, k);
  const BogoliubovAngles minus = bogoliubov_angles(g - delta, k);
  const Eigen::ArrayXd half_sum = (plus.theta + minus.theta) / 2.0;
  const Eigen::ArrayXd half_diff = (plus.theta - minus.theta) / 2.0;
  const double over_f = 2.0 * (half_sum.cos() / half_diff.cos()).sum() / n_sites;
  const double f = std::exp(half_diff.cos().log().sum());
  return {f * over_f, over_f};
}

CrossPair mz_cross_energy(int n_sites, double g, double delta) {
  require_positive_delta(delta, "mz_cross_energy");
  const double over_f = (energy_per_site_finite(n_sites, g - delta) -
                         energy_per_site_finite(n_sites, g + delta)) /
                        (2.0 * delta);
  return {fidelity(n_sites, g, delta) * over_f, over_f};
}

double mz_cross_over_f_thermo(double g, double delta) {
  require_positive_delta(delta, "mz_cross_over_f_thermo");
  return (energy_per_site_thermo(g - delta) -
          energy_per_site_thermo(g + delta)) /
         (2.0 * delta);
}

CrossPair cx_cross_energy(int n_sites, double g, double delta) {
  require_positive_delta(delta, "cx_cross_energy");
  const double over_f =
      0.5 * (((g - delta) / delta) * energy_per_site_finite(n_sites, g + delta) -
             ((g + delta) / delta) * energy_per_site_finite(n_sites, g - delta));
  return {fidelity(n_sites, g, delta) * over_f, over_f};
}

double cx_cross_over_f_thermo(double g, double delta) {
  require_positive_delta(delta, "cx_cross_over_f_thermo");
  return 0.5 * (((g - delta) / delta) * energy_per_site_thermo(g + delta) -
                ((g + delta) / delta) * energy_per_site_thermo(g - delta));
}

CrossObservable mz_observable(int n_sites, double g, double delta) {
  CrossObservable obs;
  obs.o_pp = mz_diag_finite(n_sites, g + delta);
  obs.o_mm = mz_diag_finite(n_sites, g - delta);
  if (delta > 0.0) {
    const CrossPair cross = mz_cross_spectral(n_sites, g, delta);
    obs.o_pm = cross.o_pm;
    obs.fidelity = fidelity(n_sites, g, delta);
  } else {
    obs.o_pm = obs.o_pp;
    obs.fidelity = 1.0;
  }
  return obs;
}

CrossObservable cx_observable(int n_sites, double g, double delta) {
  CrossObservable obs;
  obs.o_pp = cx_diag_finite(n_sites, g + delta);
  obs.o_mm = cx_diag_finite(n_sites, g - delta);
  if (delta > 0.0) {
    const CrossPair cross = cx_cross_energy(n_sites, g, delta);
    obs.o_pm = cross.o_pm;
    obs.fidelity = fidelity(n_sites, g, delta);
  } else {
    obs.o_pm = obs.o_pp;
    obs.fidelity = 1.0;
  }
  return obs;
}

}  // namespace qising
