#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qising/fermion_core.hpp"

namespace qising {

/// Quadrature controls for the contraction kernel. The momentum integrals
/// are evaluated as sums over the grids k_s = (2s+1) pi / n, which exclude
/// k = 0 exactly and therefore stay regular when the superposition straddles
/// the critical point; n is doubled until all entries are converged.
struct KernelOptions {
  double tolerance = 1e-8;  // max-abs entry change accepted under doubling
  long n_start = 1L << 14;  // initial quadrature ring size
  int max_doublings = 7;
};

/// Fidelity-normalized fermionic contractions of the two-state cross
/// expectation, tabulated by site offset r = m - n:
///   aa(r) = <a_m a_n>^{+-}_F = (1/pi) int_0^pi tan((th+ - th-)/2) sin(kr) dk
///   ba(r) = <b_m a_n>^{+-}_F
///         = -(1/pi) int_0^pi cos(kr - (th+ + th-)/2) / cos((th+ - th-)/2) dk
/// with b = c^dag - c and a = c^dag + c. The symmetric +-k reduction above
/// makes both tables real; <b b> = <a a> and <a_m b_n> = -<b_n a_m>.
struct ContractionKernel {
  double g = 0.0;
  double delta = 0.0;
  int r_max = 0;
  long quadrature_points = 0;  // ring size of the accepted grid

  Eigen::ArrayXd aa;  // offsets 0..r_max; aa is odd, aa(0) = 0
  Eigen::ArrayXd ba;  // offsets -r_max..r_max, stored at index r + r_max

  double aa_at(int r) const;
  double ba_at(int r) const;
};

/// Tabulates the kernel for |r| <= r_max. Throws convergence_error (with the
/// last two iterate differences) if doubling the grid never settles.
ContractionKernel kernel(double g, double delta, int r_max,
                         const KernelOptions& options = {});

/// The 2R x 2R antisymmetric matrix whose determinant gives the squared
/// cross correlator at separation R:
///   A_R = [ <b_m b_n>      <b_m a_{n+1}>     ]
///         [ <a_{m+1} b_n>  <a_{m+1} a_{n+1}> ]   m, n = 1..R,
/// Toeplitz within each block.
struct ToeplitzBlockMatrix {
  int separation = 0;
  Eigen::MatrixXd entries;
};

ToeplitzBlockMatrix assemble(const ContractionKernel& kernel_table, int separation);

/// Scalar-generic assembly of the same matrix (the complex instantiation is
/// used to monitor the determinant phase).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> assemble_matrix(
    const ContractionKernel& kernel_table, int separation);

/// C(R) = sqrt|det A_R| together with the determinant phase diagnostic. For
/// a real antisymmetric matrix the determinant is a squared Pfaffian, so the
/// phase must be 0 (or pi at roundoff scale when C ~ 0); a clearly nonzero
/// negative determinant raises numerical_error.
struct CxxResult {
  double value = 0.0;
  double det_phase = 0.0;     // radians, 0 or pi
  double log_abs_det = 0.0;
};
CxxResult cxx_cross(const ToeplitzBlockMatrix& matrix);

/// Signed log-determinant through partial-pivot LU, accumulated in log space.
template <typename Scalar>
void log_abs_det_lu(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                    double& log_abs, std::complex<double>& phase);

/// The extrapolated order-parameter cross term
///   Mx^{+-}_F = lim_{R->inf} sqrt(C(R)),
/// computed by doubling R until |sqrt C(2R) - sqrt C(R)| < tolerance.
struct CorrelatorOptions {
  int r_start = 64;
  int r_cap = 4096;
  KernelOptions kernel;
};
struct MxCrossResult {
  double value = 0.0;
  int r_used = 0;
  double last_change = 0.0;
};
MxCrossResult mx_cross(double g, double delta, double tolerance = 1e-4,
                       const CorrelatorOptions& options = {});

}  // namespace qising
