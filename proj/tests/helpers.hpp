#pragma once

#include <random>

#include "spinring/correlations.hpp"
#include "spinring/state.hpp"

namespace spinring::testing {

/// HT-valid configuration with beta*omega products scaled below the validity
/// bound by `headroom`.
inline SystemConfig random_config(std::mt19937& rng, int total_spins, double headroom = 0.5) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  const double beta = unit(rng);
  const double cap = headroom / ((total_spins - 1) * beta);
  const double omega_a = cap * unit(rng);
  const double omega_b = cap * unit(rng);
  std::uniform_real_distribution<double> gdist(0.2, 3.0);
  return SystemConfig::checked(total_spins, beta, omega_a, omega_b, gdist(rng));
}

inline Matrix random_hermitian(std::mt19937& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return 0.5 * (m + Matrix(m.adjoint()));
}

/// Random density matrix (PSD, trace one).
inline Matrix random_state(std::mt19937& rng, Eigen::Index dim) {
  const Matrix h = random_hermitian(rng, dim);
  Matrix rho = h * h.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline RingGeometry random_geometry(std::mt19937& rng, int sites, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  RealMatrix d = RealMatrix::Zero(sites, sites);
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j) d(i, j) = d(j, i) = dist(rng);
  return RingGeometry::from_couplings(d);
}

}  // namespace spinring::testing
