#include "qising/superposition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qising {

void CentralSpinAmplitudes::validate() const {
  if (c_up < 0.0 || c_down < 0.0) {
    throw std::invalid_argument("CentralSpinAmplitudes: amplitudes must be >= 0");
  }
  const double norm2 = c_up * c_up + c_down * c_down;
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "CentralSpinAmplitudes: c_up^2 + c_down^2 must equal 1");
  }
  if (!std::isfinite(phase_delta)) {
    throw std::invalid_argument("CentralSpinAmplitudes: phase must be finite");
  }
}

CentralSpinAmplitudes conditioned_on_minus(CentralSpinAmplitudes amps) {
  amps.phase_delta += std::numbers::pi;
  return amps;
}

MeasureProbabilities measure_probability(const CentralSpinAmplitudes& amps,
                                         double fidelity_value) {
  amps.validate();
  if (!(fidelity_value > 0.0 && fidelity_value <= 1.0)) {
    throw std::invalid_argument("measure_probability: fidelity must lie in (0, 1]");
  }
  const double interference =
      amps.c_up * amps.c_down * std::cos(amps.phase_delta) * fidelity_value;
  return {0.5 + interference, 0.5 - interference};
}

double expectation_conditional(const CrossObservable& obs,
                               const CentralSpinAmplitudes& amps) {
  amps.validate();
  const double o_standard =
      amps.c_up * amps.c_up * obs.o_pp + amps.c_down * amps.c_down * obs.o_mm;
  const double weight = 2.0 * amps.c_up * amps.c_down * std::cos(amps.phase_delta);
  const double denominator = 1.0 + weight * obs.fidelity;
  if (!(denominator > 0.0)) {
    // Unreachable for normalized amplitudes and F < 1; guards corrupt input.
    throw std::domain_error("expectation_conditional: non-positive norm");
  }
  return (o_standard + weight * obs.o_pm) / denominator;
}

PhaseAverage phase_average(const CrossObservable& obs,
                           const CentralSpinAmplitudes& amps) {
  amps.validate();
  const double o_standard =
      amps.c_up * amps.c_up * obs.o_pp + amps.c_down * amps.c_down * obs.o_mm;
  const double x = 2.0 * amps.c_up * amps.c_down * obs.fidelity;
  const double spread = o_standard - obs.o_pm_normalized();
  if (x >= 1.0) {
    // x = 1 only at delta = 0, where O^s = O^{+-}/F and the variance is 0.
    if (std::abs(spread) < 1e-12) return {o_standard, 0.0};
    throw std::domain_error("phase_average: 2 c_up c_down F must be < 1");
  }
  const double variance =
      spread * spread * (1.0 / std::sqrt(1.0 - x * x) - 1.0);
  return {o_standard, variance};
}

}  // namespace qising
