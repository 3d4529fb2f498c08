#include "qising/cross_correlator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qising/errors.hpp"

namespace qising {

namespace {

constexpr double kPi = std::numbers::pi;

// One evaluation of both contraction tables on the ring of size n_quad.
// The trigonometric factors cos(k r), sin(k r) advance in r by a rotation
// recurrence, re-seeded periodically to stop drift.
void tabulate(double g, double delta, int r_max, long n_quad,
              Eigen::ArrayXd& aa, Eigen::ArrayXd& ba) {
  const long half = n_quad / 2;
  Eigen::ArrayXd k(half);
  for (long s = 0; s < half; ++s) {
    k[s] = (2.0 * s + 1.0) * kPi / static_cast<double>(n_quad);
  }
  const Eigen::ArrayXd sin_k = k.sin();
  const Eigen::ArrayXd cos_k = k.cos();

  Eigen::ArrayXd theta_plus(half), theta_minus(half);
  for (long s = 0; s < half; ++s) {
    theta_plus[s] = std::atan2(sin_k[s], g + delta - cos_k[s]);
    theta_minus[s] = std::atan2(sin_k[s], g - delta - cos_k[s]);
  }
  const Eigen::ArrayXd half_diff = 0.5 * (theta_plus - theta_minus);
  const Eigen::ArrayXd half_sum = 0.5 * (theta_plus + theta_minus);
  const Eigen::ArrayXd tan_diff = half_diff.tan();
  const Eigen::ArrayXd inv_cos_diff = half_diff.cos().inverse();
  const Eigen::ArrayXd weight_c = inv_cos_diff * half_sum.cos();
  const Eigen::ArrayXd weight_s = inv_cos_diff * half_sum.sin();

  aa.resize(r_max + 1);
  ba.resize(2 * r_max + 1);
  const double norm = 2.0 / static_cast<double>(n_quad);

  Eigen::ArrayXd cos_kr = Eigen::ArrayXd::Ones(half);
  Eigen::ArrayXd sin_kr = Eigen::ArrayXd::Zero(half);
  for (int r = 0; r <= r_max; ++r) {
    if (r > 0 && r % 128 == 0) {
      cos_kr = (k * static_cast<double>(r)).cos();
      sin_kr = (k * static_cast<double>(r)).sin();
    }
    aa[r] = norm * (tan_diff * sin_kr).sum();
    const double dot_c = (weight_c * cos_kr).sum();
    const double dot_s = (weight_s * sin_kr).sum();
    ba[r_max + r] = -norm * (dot_c + dot_s);
    ba[r_max - r] = -norm * (dot_c - dot_s);
    const Eigen::ArrayXd next_cos = cos_kr * cos_k - sin_kr * sin_k;
    sin_kr = sin_kr * cos_k + cos_kr * sin_k;
    cos_kr = next_cos;
  }
  aa[0] = 0.0;  // equal-index contraction, exact by antisymmetry
}

}  // namespace

double ContractionKernel::aa_at(int r) const {
  const int magnitude = r < 0 ? -r : r;
  if (magnitude > r_max) {
    throw std::invalid_argument("ContractionKernel: aa offset out of range");
  }
  return r < 0 ? -aa[magnitude] : aa[magnitude];
}

double ContractionKernel::ba_at(int r) const {
  if (r < -r_max || r > r_max) {
    throw std::invalid_argument("ContractionKernel: ba offset out of range");
  }
  return ba[r_max + r];
}

ContractionKernel kernel(double g, double delta, int r_max,
                         const KernelOptions& options) {
  if (delta < 0.0) {
    throw std::invalid_argument("kernel: delta must be >= 0");
  }
  if (r_max < 1) {
    throw std::invalid_argument("kernel: r_max must be >= 1");
  }
  if (!(options.tolerance > 0.0)) {
    throw std::invalid_argument("kernel: tolerance must be > 0");
  }

  ContractionKernel result;
  result.g = g;
  result.delta = delta;
  result.r_max = r_max;

  Eigen::ArrayXd aa_coarse, ba_coarse;
  long n_quad = options.n_start;
  tabulate(g, delta, r_max, n_quad, aa_coarse, ba_coarse);

  double previous_diff = std::numeric_limits<double>::quiet_NaN();
  for (int step = 0; step < options.max_doublings; ++step) {
    Eigen::ArrayXd aa_fine, ba_fine;
    tabulate(g, delta, r_max, 2 * n_quad, aa_fine, ba_fine);
    const double diff = std::max((aa_fine - aa_coarse).abs().maxCoeff(),
                                 (ba_fine - ba_coarse).abs().maxCoeff());
    if (diff <= options.tolerance) {
      result.quadrature_points = 2 * n_quad;
      result.aa = std::move(aa_fine);
      result.ba = std::move(ba_fine);
      return result;
    }
    aa_coarse = std::move(aa_fine);
    ba_coarse = std::move(ba_fine);
    n_quad *= 2;
    previous_diff = diff;
  }
  std::ostringstream msg;
  msg << "kernel: entries not converged to " << options.tolerance
      << " at quadrature size " << 2 * n_quad << " (g=" << g
      << ", delta=" << delta << ", r_max=" << r_max << ")";
  throw convergence_error(msg.str(), previous_diff, options.tolerance);
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> assemble_matrix(
    const ContractionKernel& kernel_table, int separation) {
  const int r = separation;
  if (r < 1) {
    throw std::invalid_argument("assemble: separation must be >= 1");
  }
  if (kernel_table.r_max < r) {
    throw std::invalid_argument(
        "assemble: kernel range is insufficient for the requested separation");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m(2 * r, 2 * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const Scalar aa_ij = static_cast<Scalar>(kernel_table.aa_at(i - j));
      const Scalar ba_shift = static_cast<Scalar>(kernel_table.ba_at(i - j - 1));
      m(i, j) = aa_ij;              // <b_m b_n>
      m(r + i, r + j) = aa_ij;      // <a_{m+1} a_{n+1}>
      m(i, r + j) = ba_shift;       // <b_m a_{n+1}>
      m(r + j, i) = -ba_shift;      // <a_{n+1} b_m>
    }
  }
  return m;
}

template Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> assemble_matrix<double>(
    const ContractionKernel&, int);
template Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>
assemble_matrix<std::complex<double>>(const ContractionKernel&, int);

ToeplitzBlockMatrix assemble(const ContractionKernel& kernel_table, int separation) {
  return {separation, assemble_matrix<double>(kernel_table, separation)};
}

template <typename Scalar>
void log_abs_det_lu(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                    double& log_abs, std::complex<double>& phase) {
  Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(m);
  log_abs = 0.0;
  std::complex<double> unit = lu.permutationP().determinant();  // +-1
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const std::complex<double> pivot = lu.matrixLU()(i, i);
    const double mag = std::abs(pivot);
    if (mag == 0.0) {
      log_abs = -std::numeric_limits<double>::infinity();
      phase = 1.0;
      return;
    }
    log_abs += std::log(mag);
    unit *= pivot / mag;
  }
  phase = unit;
}

template void log_abs_det_lu<double>(
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&, double&,
    std::complex<double>&);
template void log_abs_det_lu<std::complex<double>>(
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&,
    double&, std::complex<double>&);

CxxResult cxx_cross(const ToeplitzBlockMatrix& matrix) {
  double log_abs = 0.0;
  std::complex<double> phase_unit;
  log_abs_det_lu<double>(matrix.entries, log_abs, phase_unit);

  CxxResult out;
  out.log_abs_det = log_abs;
  out.value = std::isinf(log_abs) ? 0.0 : std::exp(0.5 * log_abs);
  out.det_phase = std::abs(std::arg(phase_unit));
  // det A = Pf(A)^2 >= 0 for real antisymmetric A; a negative determinant of
  // clearly nonzero magnitude means the matrix was not what it claims to be.
  if (out.det_phase > 1e-6 && out.value > 1e-10) {
    std::ostringstream msg;
    msg << "cxx_cross: determinant phase " << out.det_phase
        << " rad off the real axis at |det|^(1/2) = " << out.value;
    throw numerical_error(msg.str());
  }
  return out;
}

MxCrossResult mx_cross(double g, double delta, double tolerance,
                       const CorrelatorOptions& options) {
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("mx_cross: tolerance must be > 0");
  }
  if (delta < 0.0) {
    throw std::invalid_argument("mx_cross: delta must be >= 0");
  }
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int r = options.r_start; r <= options.r_cap; r *= 2) {
    const ContractionKernel table = kernel(g, delta, r, options.kernel);
    const double sqrt_c = std::sqrt(cxx_cross(assemble(table, r)).value);
    if (std::isfinite(previous) && std::abs(sqrt_c - previous) < tolerance) {
      return {sqrt_c, r, std::abs(sqrt_c - previous)};
    }
    previous = sqrt_c;
  }
  std::ostringstream msg;
  msg << "mx_cross: sqrt C(R) not Cauchy to " << tolerance << " by R = "
      << options.r_cap << " (g=" << g << ", delta=" << delta << ")";
  throw convergence_error(msg.str(), previous, tolerance);
}

}  // namespace qising
