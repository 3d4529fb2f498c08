#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "qising/ed_oracle.hpp"
#include "qising/observables.hpp"

using namespace qising;

TEST_CASE("two-site ground energy") {
  const DenseState gs = ground_state(2, 0.0, 0.0);
  CHECK(gs.energy == doctest::Approx(-2.0).epsilon(1e-13));
}

TEST_CASE("ground energy matches the free-fermion sum") {
  for (auto [n, g] : {std::pair{8, 1.5}, {6, 0.4}, {10, 1.0}, {8, -0.2}}) {
    const DenseState gs = ground_state(n, g, 0.0);
    CHECK(gs.energy / n ==
          doctest::Approx(energy_per_site_finite(n, g)).epsilon(1e-10));
  }
}

TEST_CASE("ground state is deterministic in the quasi-degenerate phase") {
  const DenseState a = ground_state(8, 0.5, 0.0);
  const DenseState b = ground_state(8, 0.5, 0.0);
  CHECK((a.amplitudes - b.amplitudes).norm() == 0.0);
  // even spin-flip parity: amplitudes on odd-parity states vanish
  for (int s = 0; s < (1 << 8); ++s) {
    if (std::popcount(unsigned(s)) % 2 == 1) {
      CHECK(std::abs(a.amplitudes[s]) == 0.0);
    }
  }
}

TEST_CASE("symmetry-breaking field magnetizes the ferromagnet") {
  // At N=8 the parity doublet splitting competes with h = 1e-4, leaving the
  // magnetization partially formed; by h = 1e-3 the field saturates it.
  const DenseState weak = ground_state(8, 0.5, 1e-4);
  const double mx_weak = cross_expectation(OpSpec::sx(0), weak, weak).real();
  CHECK(mx_weak > 0.5);
  const DenseState strong = ground_state(8, 0.5, 1e-3);
  const double mx_strong = cross_expectation(OpSpec::sx(0), strong, strong).real();
  CHECK(mx_strong > 0.9);
}

TEST_CASE("overlap reproduces the fidelity") {
  DenseState a = ground_state(8, 1.1, 0.0);
  DenseState b = ground_state(8, 0.9, 0.0);
  align_pair(a, b);
  CHECK(overlap(a, b).real() ==
        doctest::Approx(fidelity(8, 1.0, 0.1)).epsilon(1e-10));
  CHECK(std::abs(overlap(a, b).imag()) < 1e-14);
  CHECK(overlap(a, a).real() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("cross expectations match the analytic forms") {
  DenseState a = ground_state(10, 1.1, 0.0);
  DenseState b = ground_state(10, 0.9, 0.0);
  align_pair(a, b);
  CHECK(cross_expectation(OpSpec::sz(0), a, b).real() ==
        doctest::Approx(mz_cross_spectral(10, 1.0, 0.1).o_pm).epsilon(1e-9));
  CHECK(cross_expectation(OpSpec::sxsx(0, 1), a, b).real() ==
        doctest::Approx(cx_cross_energy(10, 1.0, 0.1).o_pm).epsilon(1e-9));
  // same states: cross term degenerates to the diagonal expectation
  CHECK(cross_expectation(OpSpec::sz(0), a, a).real() ==
        doctest::Approx(mz_diag_finite(10, 1.1)).epsilon(1e-10));
  // translation invariance on the ring
  CHECK(cross_expectation(OpSpec::sz(3), a, b).real() ==
        doctest::Approx(cross_expectation(OpSpec::sz(0), a, b).real())
            .epsilon(1e-10));
}

TEST_CASE("randomized free-fermion equivalence") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g_dist(0.0, 2.0);
  std::uniform_real_distribution<double> d_dist(0.01, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    const double g = g_dist(rng);
    const double delta = d_dist(rng);
    for (int n : {4, 6, 8}) {
      DenseState a = ground_state(n, g + delta, 0.0);
      DenseState b = ground_state(n, g - delta, 0.0);
      align_pair(a, b);
      CHECK(std::abs(overlap(a, b).real() - fidelity(n, g, delta)) < 1e-8);
      CHECK(std::abs(cross_expectation(OpSpec::sz(0), a, b).real() -
                     mz_cross_spectral(n, g, delta).o_pm) < 1e-8);
      CHECK(std::abs(cross_expectation(OpSpec::sxsx(0, 1), a, a).real() -
                     cx_diag_finite(n, g + delta)) < 1e-8);
    }
  }
}

TEST_CASE("gauge invariance of reported physics") {
  DenseState a = ground_state(6, 1.2, 0.0);
  DenseState b = ground_state(6, 0.8, 0.0);
  align_pair(a, b);
  const double f = std::abs(overlap(a, b));
  const double mz = std::abs(cross_expectation(OpSpec::sz(0), a, b).real());

  DenseState rotated = b;
  rotated.amplitudes *= std::polar(1.0, 1.234);
  CHECK(std::abs(overlap(a, rotated)) == doctest::Approx(f).epsilon(1e-12));
  CHECK(std::abs(cross_expectation(OpSpec::sz(0), a, rotated)) ==
        doctest::Approx(mz).epsilon(1e-12));

  // gauge_fix undoes the rotation up to sign
  gauge_fix(rotated);
  align_pair(a, rotated);
  CHECK((rotated.amplitudes - b.amplitudes).norm() < 1e-12);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(ground_state(7, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ground_state(16, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ground_state(8, 1.0, -0.1), std::invalid_argument);
  const DenseState small = ground_state(4, 1.0, 0.0);
  const DenseState large = ground_state(6, 1.0, 0.0);
  CHECK_THROWS_AS(overlap(small, large), std::invalid_argument);
  CHECK_THROWS_AS(cross_expectation(OpSpec::sz(0), small, large),
                  std::invalid_argument);
  CHECK_THROWS_AS(cross_expectation(OpSpec::sz(9), small, small),
                  std::invalid_argument);
  CHECK_THROWS_AS(composite_sector_check(14, 1.0, 0.05), std::invalid_argument);
}

TEST_CASE("composite model sector structure") {
  for (auto [g, delta] : {std::pair{1.0, 0.05}, {0.5, 0.6}}) {
    const CompositeSectorReport report = composite_sector_check(8, g, delta);
    CHECK(report.commutator_max < 1e-12);
    CHECK(report.overlap_deficit_up < 1e-10);
    CHECK(report.overlap_deficit_down < 1e-10);
    CHECK(report.pass());
  }
  // delta = 0: both sectors carry the same chain state
  const CompositeSectorReport degenerate = composite_sector_check(6, 1.0, 0.0);
  CHECK(degenerate.pass());
}
