#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qising {

/// A chain eigenstate in the full 2^N computational basis (bit n set means
/// sigma^z_n = -1). Unit norm; gauge-fixed so the largest-magnitude
/// amplitude is real positive.
struct DenseState {
  Eigen::VectorXcd amplitudes;
  int n_sites = 0;
  double energy = 0.0;
};

/// Ground state of H = -sum_n (sigma^x_n sigma^x_{n+1} + g_eff sigma^z_n)
///                     - h sum_n sigma^x_n
/// on the periodic ring. At h = 0 the solve is restricted to the even
/// spin-flip-parity sector, which resolves the ferromagnetic quasi-doublet
/// deterministically. Dense solver for small dimensions, seeded Lanczos with
/// full reorthogonalization above that. n_sites <= 14.
DenseState ground_state(int n_sites, double g_eff, double h = 0.0);

/// <a|b> with Eigen's convention of conjugating the left factor.
std::complex<double> overlap(const DenseState& a, const DenseState& b);

/// Observables whose matrix elements the oracle can take between states:
/// sigma^z_n, sigma^x_n, and the pair sigma^x_{site} sigma^x_{site2}.
struct OpSpec {
  enum class Kind { sz, sx, sxsx } kind = Kind::sz;
  int site = 0;
  int site2 = 1;

  static OpSpec sz(int n = 0) { return {Kind::sz, n, 0}; }
  static OpSpec sx(int n = 0) { return {Kind::sx, n, 0}; }
  static OpSpec sxsx(int m, int n) { return {Kind::sxsx, m, n}; }
};

/// <a|O|b>; exact dense contraction.
std::complex<double> cross_expectation(const OpSpec& op, const DenseState& a,
                                       const DenseState& b);

/// Rotate so the largest-magnitude amplitude is real positive.
void gauge_fix(DenseState& state);

/// Flip the sign of b if Re<a|b> < 0, making the pair's overlap positive.
void align_pair(const DenseState& a, DenseState& b);

/// Structure check of the composite (chain + central spin) Hamiltonian
///   H = -sum_n sigma^x_n sigma^x_{n+1} - sum_n (g + delta sigma^z_S) sigma^z_n:
/// (a) max-norm of [H, sigma^z_S] over every nonzero Hamiltonian entry, and
/// (b) overlap deficit 1 - |<ground of sector s | s> x |g + s delta>| for the
/// two central-spin sectors s = +-1. Both sector solves are restricted to
/// the even chain-parity subspace, matching the ground_state convention.
struct CompositeSectorReport {
  double commutator_max = 0.0;
  double overlap_deficit_up = 0.0;
  double overlap_deficit_down = 0.0;
  bool pass(double commutator_tol = 1e-12, double overlap_tol = 1e-10) const {
    return commutator_max < commutator_tol && overlap_deficit_up < overlap_tol &&
           overlap_deficit_down < overlap_tol;
  }
};
CompositeSectorReport composite_sector_check(int n_sites, double g, double delta);

}  // namespace qising
