#include "qising/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "qising/errors.hpp"

namespace qising {

namespace {

constexpr int kMaxSites = 14;
constexpr int kDenseDimLimit = 1024;

using Matvec = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

// Basis bookkeeping for the even spin-flip-parity sector: the list of basis
// states with an even number of set bits and the inverse lookup.
struct ParityBasis {
  std::vector<std::uint32_t> states;
  std::vector<std::int32_t> index;  // -1 for odd-parity states

  explicit ParityBasis(int n_sites) {
    const std::uint32_t dim = 1u << n_sites;
    index.assign(dim, -1);
    for (std::uint32_t s = 0; s < dim; ++s) {
      if (std::popcount(s) % 2 == 0) {
        index[s] = static_cast<std::int32_t>(states.size());
        states.push_back(s);
      }
    }
  }
};

// sum_n sigma^z_n on a basis state: each clear bit contributes +1.
inline double sz_total(std::uint32_t s, int n_sites) {
  return n_sites - 2.0 * std::popcount(s);
}

// H restricted to the even-parity sector (h = 0 only): diagonal field term
// plus the bond flips, which preserve parity.
void apply_chain_even(int n_sites, double g_eff, const ParityBasis& basis,
                      const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const std::size_t dim = basis.states.size();
  out.setZero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint32_t s = basis.states[i];
    const double amp = in[static_cast<Eigen::Index>(i)];
    if (amp == 0.0) continue;
    out[static_cast<Eigen::Index>(i)] += -g_eff * sz_total(s, n_sites) * amp;
    for (int n = 0; n < n_sites; ++n) {
      const int m = (n + 1) % n_sites;
      const std::uint32_t flipped = s ^ (1u << n) ^ (1u << m);
      out[basis.index[flipped]] += -amp;
    }
  }
}

// Full-space H including the longitudinal field.
void apply_chain_full(int n_sites, double g_eff, double h,
                      const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  const std::uint32_t dim = 1u << n_sites;
  out.setZero(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    const double amp = in[s];
    if (amp == 0.0) continue;
    out[s] += -g_eff * sz_total(s, n_sites) * amp;
    for (int n = 0; n < n_sites; ++n) {
      const int m = (n + 1) % n_sites;
      out[s ^ (1u << n) ^ (1u << m)] += -amp;
      if (h != 0.0) out[s ^ (1u << n)] += -h * amp;
    }
  }
}

Eigen::MatrixXd materialize(const Matvec& apply, Eigen::Index dim) {
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd column(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    unit[j] = 1.0;
    apply(unit, column);
    h.col(j) = column;
    unit[j] = 0.0;
  }
  return h;
}

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
};

EigenPair dense_ground(const Matvec& apply, Eigen::Index dim) {
  const Eigen::MatrixXd h = materialize(apply, dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  return {solver.eigenvalues()[0], solver.eigenvectors().col(0)};
}

// Lanczos with full reorthogonalization and a fixed-seed start vector.
// Deterministic; converges the smallest eigenpair to ~1e-13 relative.
EigenPair lanczos_ground(const Matvec& apply, Eigen::Index dim,
                         int max_iter = 800, double tol = 1e-13) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();

  std::vector<Eigen::VectorXd> basis;
  Eigen::VectorXd alpha(0), beta(0);
  Eigen::VectorXd w(dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double previous_value = std::numeric_limits<double>::max();

  max_iter = static_cast<int>(std::min<Eigen::Index>(max_iter, dim));
  int m = 0;
  bool breakdown = false;
  for (int j = 0; j < max_iter; ++j) {
    basis.push_back(v);
    apply(v, w);
    alpha.conservativeResize(j + 1);
    alpha[j] = v.dot(w);
    w -= alpha[j] * v;
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    for (const Eigen::VectorXd& u : basis) w -= u.dot(w) * u;

    m = j + 1;
    tri.computeFromTridiagonal(alpha.head(m), beta.head(std::max(0, m - 1)),
                               Eigen::EigenvaluesOnly);
    const double value = tri.eigenvalues()[0];
    const double b = w.norm();
    breakdown = b < 1e-14;
    const bool value_settled =
        j >= 8 &&
        std::abs(value - previous_value) <= tol * std::max(1.0, std::abs(value));
    if (value_settled || breakdown) break;
    previous_value = value;
    beta.conservativeResize(j + 1);
    beta[j] = b;
    v = w / b;
  }

  tri.computeFromTridiagonal(alpha.head(m), beta.head(std::max(0, m - 1)),
                             Eigen::ComputeEigenvectors);
  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < m; ++i) ritz += tri.eigenvectors()(i, 0) * basis[i];
  ritz.normalize();
  return {tri.eigenvalues()[0], ritz};
}

EigenPair solve_ground(const Matvec& apply, Eigen::Index dim) {
  return dim <= kDenseDimLimit ? dense_ground(apply, dim)
                               : lanczos_ground(apply, dim);
}

void check_sites(int n_sites, const char* who) {
  if (n_sites < 2 || n_sites % 2 != 0 || n_sites > kMaxSites) {
    throw std::invalid_argument(std::string(who) +
                                ": n_sites must be even, >= 2 and <= 14");
  }
}

}  // namespace

DenseState ground_state(int n_sites, double g_eff, double h) {
  check_sites(n_sites, "ground_state");
  if (h < 0.0) throw std::invalid_argument("ground_state: h must be >= 0");

  DenseState out;
  out.n_sites = n_sites;
  const std::uint32_t full_dim = 1u << n_sites;
  out.amplitudes = Eigen::VectorXcd::Zero(full_dim);

  if (h == 0.0) {
    const ParityBasis basis(n_sites);
    const auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& o) {
      apply_chain_even(n_sites, g_eff, basis, in, o);
    };
    const EigenPair pair =
        solve_ground(apply, static_cast<Eigen::Index>(basis.states.size()));
    out.energy = pair.value;
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
      out.amplitudes[basis.states[i]] = pair.vector[static_cast<Eigen::Index>(i)];
    }
  } else {
    const auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& o) {
      apply_chain_full(n_sites, g_eff, h, in, o);
    };
    const EigenPair pair = solve_ground(apply, full_dim);
    out.energy = pair.value;
    out.amplitudes = pair.vector.cast<std::complex<double>>();
  }
  gauge_fix(out);
  return out;
}

std::complex<double> overlap(const DenseState& a, const DenseState& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  return a.amplitudes.dot(b.amplitudes);
}

std::complex<double> cross_expectation(const OpSpec& op, const DenseState& a,
                                       const DenseState& b) {
  if (a.amplitudes.size() != b.amplitudes.size()) {
    throw std::invalid_argument("cross_expectation: dimension mismatch");
  }
  const int n_sites = b.n_sites;
  auto check_site = [n_sites](int n) {
    if (n < 0 || n >= n_sites) {
      throw std::invalid_argument("cross_expectation: site out of range");
    }
  };
  const Eigen::Index dim = b.amplitudes.size();
  Eigen::VectorXcd transformed(dim);
  switch (op.kind) {
    case OpSpec::Kind::sz: {
      check_site(op.site);
      for (Eigen::Index s = 0; s < dim; ++s) {
        const double sign = (s >> op.site) & 1 ? -1.0 : 1.0;
        transformed[s] = sign * b.amplitudes[s];
      }
      break;
    }
    case OpSpec::Kind::sx: {
      check_site(op.site);
      for (Eigen::Index s = 0; s < dim; ++s) {
        transformed[s ^ (1LL << op.site)] = b.amplitudes[s];
      }
      break;
    }
    case OpSpec::Kind::sxsx: {
      check_site(op.site);
      check_site(op.site2);
      const Eigen::Index mask = (1LL << op.site) ^ (1LL << op.site2);
      for (Eigen::Index s = 0; s < dim; ++s) {
        transformed[s ^ mask] = b.amplitudes[s];
      }
      break;
    }
  }
  return a.amplitudes.dot(transformed);
}

void gauge_fix(DenseState& state) {
  Eigen::Index arg_max = 0;
  state.amplitudes.cwiseAbs().maxCoeff(&arg_max);
  const std::complex<double> amp = state.amplitudes[arg_max];
  const double mag = std::abs(amp);
  if (mag > 0.0) state.amplitudes *= std::conj(amp) / mag;
}

void align_pair(const DenseState& a, DenseState& b) {
  if (overlap(a, b).real() < 0.0) b.amplitudes = -b.amplitudes;
}

CompositeSectorReport composite_sector_check(int n_sites, double g, double delta) {
  check_sites(n_sites, "composite_sector_check");
  if (n_sites > 12) {
    throw std::invalid_argument("composite_sector_check: n_sites <= 12");
  }

  CompositeSectorReport report;

  // (a) [H, sigma^z_S] over the composite basis, chain bits 0..N-1 and the
  // central spin at bit N. sigma^z_S is diagonal, so the commutator entry at
  // (row, col) is H(row, col) * (sz_S(col) - sz_S(row)); it suffices to walk
  // the nonzero entries of H.
  const std::uint64_t dim = 1ull << (n_sites + 1);
  const std::uint64_t central_mask = 1ull << n_sites;
  double commutator_max = 0.0;
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double sz_s_col = col & central_mask ? -1.0 : 1.0;
    // Diagonal field entry -(g + delta sz_S) sum_n sigma^z_n: row == col,
    // zero commutator contribution. Bond flips are the only off-diagonal
    // entries; they touch chain bits alone.
    for (int n = 0; n < n_sites; ++n) {
      const int m = (n + 1) % n_sites;
      const std::uint64_t row = col ^ (1ull << n) ^ (1ull << m);
      const double sz_s_row = row & central_mask ? -1.0 : 1.0;
      const double bond_entry = -1.0;
      commutator_max =
          std::max(commutator_max, std::abs(bond_entry * (sz_s_col - sz_s_row)));
    }
  }
  report.commutator_max = commutator_max;

  // (b) Sector ground states of the composite Hamiltonian, solved in the
  // even chain-parity subspace of each central-spin sector, against the
  // factorized product with the chain ground state.
  const ParityBasis basis(n_sites);
  const Eigen::Index sector_dim = static_cast<Eigen::Index>(basis.states.size());
  for (const int central_sign : {+1, -1}) {
    const auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
      out.setZero(sector_dim);
      for (Eigen::Index i = 0; i < sector_dim; ++i) {
        const std::uint32_t s = basis.states[static_cast<std::size_t>(i)];
        const double amp = in[i];
        if (amp == 0.0) continue;
        const double field = g + delta * central_sign;
        out[i] += -field * sz_total(s, n_sites) * amp;
        for (int n = 0; n < n_sites; ++n) {
          const int m = (n + 1) % n_sites;
          out[basis.index[s ^ (1u << n) ^ (1u << m)]] += -amp;
        }
      }
    };
    const EigenPair sector = solve_ground(apply, sector_dim);
    const DenseState chain =
        ground_state(n_sites, g + delta * central_sign, 0.0);
    std::complex<double> sector_overlap = 0.0;
    for (Eigen::Index i = 0; i < sector_dim; ++i) {
      sector_overlap += sector.vector[i] *
                        chain.amplitudes[basis.states[static_cast<std::size_t>(i)]];
    }
    const double deficit = 1.0 - std::abs(sector_overlap);
    if (central_sign > 0) {
      report.overlap_deficit_up = deficit;
    } else {
      report.overlap_deficit_down = deficit;
    }
  }
  return report;
}

}  // namespace qising
