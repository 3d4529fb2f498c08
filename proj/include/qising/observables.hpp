#pragma once

#include "qising/fermion_core.hpp"

namespace qising {

/// The quadruple from which every conditional or phase-averaged expectation
/// value derives: the two diagonal expectations O^{++} = <g+d|O|g+d> and
/// O^{--} = <g-d|O|g-d>, the cross matrix element O^{+-} = <g+d|O|g-d>, and
/// the ground-state overlap F = <g-d|g+d>.
struct CrossObservable {
  double o_pp = 0.0;
  double o_mm = 0.0;
  double o_pm = 0.0;
  double fidelity = 1.0;

  /// O^{+-}/F, the piece that stays finite when F -> 0 with system size.
  double o_pm_normalized() const { return o_pm / fidelity; }
};

/// Cross matrix element together with its fidelity-normalized form.
struct CrossPair {
  double o_pm = 0.0;
  double o_pm_over_f = 0.0;
};

/// log F(N, g, delta) = sum_{k>0} log cos((theta+_k - theta-_k)/2).
/// Accumulated in log space so large-N underflow of the product cannot occur.
double log_fidelity(int n_sites, double g, double delta);

/// F = exp(log_fidelity); always in (0, 1], equal to 1 iff delta = 0.
double fidelity(int n_sites, double g, double delta);

/// Transverse magnetization <sigma^z> of a single ground state.
double mz_diag_finite(int n_sites, double g_eff);
double mz_diag_thermo(double g_eff);

/// Bond correlator <sigma^x_n sigma^x_{n+1}> of a single ground state. The
/// finite-N value follows from the energy identity
///   eps_N(g') = -Cx - g' Mz.
double cx_diag_finite(int n_sites, double g_eff);
double cx_diag_thermo(double g_eff);

/// Spontaneous magnetization (1 - g_eff^2)^{1/8} for |g_eff| < 1, else 0.
double mx_diag_thermo(double g_eff);

/// Cross transverse magnetization <g+d|sigma^z|g-d>, two independent routes:
/// the per-mode spectral sum and the ground-energy difference quotient
///   Mz^{+-} = F (eps(g-d) - eps(g+d)) / (2 delta).
/// The energy route needs delta > 0 and throws std::invalid_argument at
/// delta = 0 (use mz_diag_* there).
CrossPair mz_cross_spectral(int n_sites, double g, double delta);
CrossPair mz_cross_energy(int n_sites, double g, double delta);
double mz_cross_over_f_thermo(double g, double delta);

/// Cross bond correlator from the pair of eigen-equation projections,
///   Cx^{+-} = (F/2) [ ((g-d)/d) eps(g+d) - ((g+d)/d) eps(g-d) ].
CrossPair cx_cross_energy(int n_sites, double g, double delta);
double cx_cross_over_f_thermo(double g, double delta);

/// Assembled quadruples for the two operators with closed finite-N forms.
CrossObservable mz_observable(int n_sites, double g, double delta);
CrossObservable cx_observable(int n_sites, double g, double delta);

}  // namespace qising
