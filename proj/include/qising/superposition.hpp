#pragma once

#include "qising/observables.hpp"

namespace qising {

/// Amplitudes of the central spin before measurement. Only the relative
/// phase Delta = phi_up - phi_down enters any downstream expression, so the
/// absolute phases are not stored.
struct CentralSpinAmplitudes {
  double c_up = 1.0;
  double c_down = 0.0;
  double phase_delta = 0.0;

  void validate() const;
};

/// Same preparation conditioned on the |-> measurement outcome instead of
/// |+>; equivalent to shifting the relative phase by pi.
CentralSpinAmplitudes conditioned_on_minus(CentralSpinAmplitudes amps);

/// Probabilities of finding the central spin in |+> / |->:
///   P_pm = 1/2 +- c_up c_down cos(Delta) F.
struct MeasureProbabilities {
  double p_plus = 0.5;
  double p_minus = 0.5;
};
MeasureProbabilities measure_probability(const CentralSpinAmplitudes& amps,
                                         double fidelity_value);

/// Expectation value in the post-measurement superposition state,
///   O = (O^s + 2 c_up c_down cos(Delta) O^{+-})
///       / (1 + 2 c_up c_down cos(Delta) F),
/// with O^s = c_up^2 O^{++} + c_down^2 O^{--}.
double expectation_conditional(const CrossObservable& obs,
                               const CentralSpinAmplitudes& amps);

/// Mean and variance over a uniform relative-phase distribution, weighted by
/// the |+> outcome probability:
///   mean = O^s,
///   var  = (O^s - O^{+-}/F)^2 (1/sqrt(1 - x^2) - 1),  x = 2 c_up c_down F.
struct PhaseAverage {
  double mean = 0.0;
  double variance = 0.0;
};
PhaseAverage phase_average(const CrossObservable& obs,
                           const CentralSpinAmplitudes& amps);

}  // namespace qising
