#pragma once

#include <Eigen/Dense>

namespace qising {

/// Parameters of the Ising ring: N spins with nearest-neighbour sigma^x
/// coupling, transverse field g, central-spin coupling amplitude delta, and
/// an optional longitudinal bias h (used only by the dense-diagonalization
/// paths; the free-fermion solution requires h = 0).
struct ChainSpec {
  int n_sites = 2;
  double g = 1.0;
  double delta = 0.0;
  double h = 0.0;

  void validate() const;
};

/// Positive-half momentum grid; the negative modes follow by k -> -k.
using ModeSet = Eigen::ArrayXd;

/// k_s = (2s+1) pi/N for s = 0..N/2-1. N must be even and >= 2.
ModeSet momenta(int n_sites);

/// Rotation angle of the momentum-k quasiparticle pair at effective field
/// g_eff, on the branch theta in (0, pi):
///   tan(theta) = sin k / (g_eff - cos k),  k in (0, pi).
double bogoliubov_angle(double g_eff, double k);

/// Angles for a whole mode grid at one effective field.
struct BogoliubovAngles {
  double field = 0.0;
  Eigen::ArrayXd theta;  // one angle per positive mode, each in (0, pi)
};
BogoliubovAngles bogoliubov_angles(double g_eff, const ModeSet& modes);

/// Ground-state energy per site of the N-site ring,
///   -(1/N) sum_{all k} sqrt((g_eff - cos k)^2 + sin^2 k).
double energy_per_site_finite(int n_sites, double g_eff);

/// N -> infinity limit, -(2/pi) |1 + g_eff| E(chi) with
/// chi = 4 g_eff / (1 + g_eff)^2. The point g_eff = -1 (chi divergent) is
/// rejected with std::invalid_argument.
double energy_per_site_thermo(double g_eff);

/// chi = 4 g / (1 + g)^2; lies in (-inf, 1] for every real g != -1.
double pfeuty_chi(double g_eff);

/// Complete elliptic integrals in the parameter convention,
///   K(m) = int_0^{pi/2} dphi / sqrt(1 - m sin^2 phi),
///   E(m) = int_0^{pi/2} dphi   sqrt(1 - m sin^2 phi),
/// evaluated by arithmetic-geometric-mean iteration. Domain m <= 1; K
/// diverges at m = 1 and throws there.
double elliptic_K(double m);
double elliptic_E(double m);
void elliptic_KE(double m, double& k_out, double& e_out);

}  // namespace qising
