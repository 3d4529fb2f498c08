#include "qising/fermion_core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qising {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ChainSpec::validate() const {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument("ChainSpec: n_sites must be even and >= 2");
  }
  if (!std::isfinite(g) || !std::isfinite(delta)) {
    throw std::invalid_argument("ChainSpec: g and delta must be finite");
  }
  if (delta < 0.0) {
    throw std::invalid_argument("ChainSpec: delta must be >= 0");
  }
  if (h < 0.0 || !std::isfinite(h)) {
    throw std::invalid_argument("ChainSpec: h must be finite and >= 0");
  }
}

ModeSet momenta(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0) {
    throw std::invalid_argument("momenta: n_sites must be even and >= 2, got " +
                                std::to_string(n_sites));
  }
  const int half = n_sites / 2;
  ModeSet k(half);
  for (int s = 0; s < half; ++s) {
    k[s] = (2.0 * s + 1.0) * kPi / n_sites;
  }
  return k;
}

double bogoliubov_angle(double g_eff, double k) {
  if (!(k > 0.0 && k < kPi)) {
    throw std::invalid_argument("bogoliubov_angle: k must lie in (0, pi)");
  }
  // sin k > 0 on (0, pi), so atan2 lands on the (0, pi) branch directly.
  return std::atan2(std::sin(k), g_eff - std::cos(k));
}

BogoliubovAngles bogoliubov_angles(double g_eff, const ModeSet& modes) {
  BogoliubovAngles out;
  out.field = g_eff;
  out.theta = Eigen::ArrayXd(modes.size());
  for (Eigen::Index i = 0; i < modes.size(); ++i) {
    out.theta[i] = std::atan2(std::sin(modes[i]), g_eff - std::cos(modes[i]));
  }
  return out;
}

double energy_per_site_finite(int n_sites, double g_eff) {
  const ModeSet k = momenta(n_sites);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    sum += std::hypot(g_eff - std::cos(k[i]), std::sin(k[i]));
  }
  return -2.0 * sum / n_sites;  // factor 2: modes come in +-k pairs
}

double pfeuty_chi(double g_eff) {
  const double onepg = 1.0 + g_eff;
  if (onepg == 0.0) {
    throw std::invalid_argument("pfeuty_chi: g_eff = -1 is a divergent point");
  }
  return 4.0 * g_eff / (onepg * onepg);
}

double energy_per_site_thermo(double g_eff) {
  if (!std::isfinite(g_eff)) {
    throw std::invalid_argument("energy_per_site_thermo: g_eff must be finite");
  }
  const double chi = pfeuty_chi(g_eff);
  return -(2.0 / kPi) * std::abs(1.0 + g_eff) * elliptic_E(chi);
}

namespace {

// AGM iteration shared by K and E:
//   a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n), c_{n+1} = (a_n - b_n)/2,
// starting from a_0 = 1, b_0 = sqrt(1 - m), c_0^2 = m. Then
//   K = pi / (2 AGM),   E = K (1 - sum_n 2^{n-1} c_n^2).
void agm_ke(double m, double& k_out, double& e_out) {
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double sum = 0.5 * m;
  double pow2 = 0.5;
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-17 * a; ++it) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  k_out = kPi / (2.0 * a);
  e_out = k_out * (1.0 - sum);
}

}  // namespace

void elliptic_KE(double m, double& k_out, double& e_out) {
  if (!(m <= 1.0)) {
    throw std::invalid_argument("elliptic integrals: parameter m must be <= 1");
  }
  if (m == 1.0) {
    e_out = 1.0;
    k_out = std::numeric_limits<double>::infinity();
    return;
  }
  agm_ke(m, k_out, e_out);
}

double elliptic_K(double m) {
  if (!(m < 1.0)) {
    if (m == 1.0) {
      throw std::invalid_argument("elliptic_K diverges at m = 1");
    }
    throw std::invalid_argument("elliptic_K: parameter m must be < 1");
  }
  double k = 0.0, e = 0.0;
  agm_ke(m, k, e);
  return k;
}

double elliptic_E(double m) {
  if (!(m <= 1.0)) {
    throw std::invalid_argument("elliptic_E: parameter m must be <= 1");
  }
  if (m == 1.0) return 1.0;
  double k = 0.0, e = 0.0;
  agm_ke(m, k, e);
  return e;
}

}  // namespace qising
