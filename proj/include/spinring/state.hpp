#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "spinring/operators.hpp"
#include "spinring/types.hpp"

namespace spinring {

/// Physical parameters of the (N-1)x1 ring-plus-center system.
///
/// All frequencies are angular (hbar = 1); beta is the inverse temperature in
/// 1/angular-frequency units. The high-temperature validity conditions
/// (N-1)*beta*omega_a < 1 and (N-1)*beta*omega_b < 1 are enforced by the
/// checked constructor; `unchecked` skips only that test.
class SystemConfig {
 public:
  static SystemConfig checked(int total_spins, double beta, double omega_a, double omega_b,
                              double g = 1.0) {
    SystemConfig c(total_spins, beta, omega_a, omega_b, g, true);
    if (!c.ht_valid())
      throw std::domain_error(
          "SystemConfig: high-temperature validity (N-1)*beta*omega < 1 violated; "
          "use SystemConfig::unchecked to construct anyway");
    return c;
  }

  static SystemConfig unchecked(int total_spins, double beta, double omega_a, double omega_b,
                                double g = 1.0) {
    return SystemConfig(total_spins, beta, omega_a, omega_b, g, false);
  }

  int total_spins() const { return total_spins_; }
  int num_ring_spins() const { return total_spins_ - 1; }
  Eigen::Index dim() const { return Eigen::Index(1) << total_spins_; }
  Eigen::Index ring_dim() const { return Eigen::Index(1) << (total_spins_ - 1); }

  double beta() const { return beta_; }
  double omega_a() const { return omega_a_; }
  double omega_b() const { return omega_b_; }
  double g() const { return g_; }

  double gamma() const { return omega_a_ / omega_b_; }
  double u() const { return 0.5 * num_ring_spins() * beta_ * omega_b_; }
  double v() const { return 0.5 * num_ring_spins() * beta_ * omega_a_; }

  bool ht_valid() const {
    return num_ring_spins() * beta_ * omega_a_ < 1.0 && num_ring_spins() * beta_ * omega_b_ < 1.0;
  }
  bool ht_checked() const { return ht_checked_; }

 private:
  SystemConfig(int total_spins, double beta, double omega_a, double omega_b, double g, bool checked)
      : total_spins_(total_spins), beta_(beta), omega_a_(omega_a), omega_b_(omega_b), g_(g),
        ht_checked_(checked) {
    if (total_spins_ < 2) throw std::domain_error("SystemConfig: need at least two spins");
    if (total_spins_ > kMaxTotalSpins) throw std::domain_error("SystemConfig: total_spins exceeds dense-matrix cap");
    if (beta_ <= 0 || omega_a_ <= 0 || omega_b_ <= 0) throw std::domain_error("SystemConfig: beta and frequencies must be positive");
    if (g_ == 0) throw std::domain_error("SystemConfig: coupling g must be nonzero");
  }

  int total_spins_;
  double beta_, omega_a_, omega_b_, g_;
  bool ht_checked_;
};

/// Dipolar couplings d_ij between ring sites (symmetric, zero diagonal).
class RingGeometry {
 public:
  static RingGeometry from_couplings(RealMatrix couplings, double radius = 1.0) {
    return RingGeometry(std::move(couplings), radius);
  }

  /// Sites equally spaced on a circle; d_ij = d0 / r_ij^3 with r_ij the chord
  /// distance.
  static RingGeometry regular(int num_sites, double radius, double d0) {
    if (num_sites < 1) throw std::domain_error("RingGeometry: need at least one site");
    RealMatrix d = RealMatrix::Zero(num_sites, num_sites);
    for (int i = 0; i < num_sites; ++i)
      for (int j = i + 1; j < num_sites; ++j) {
        const double chord = 2.0 * radius * std::sin(kPi * (j - i) / num_sites);
        d(i, j) = d(j, i) = d0 / (chord * chord * chord);
      }
    return RingGeometry(std::move(d), radius);
  }

  int num_sites() const { return int(couplings_.rows()); }
  double coupling(int i, int j) const { return couplings_(i, j); }
  const RealMatrix& couplings() const { return couplings_; }
  double radius() const { return radius_; }

 private:
  RingGeometry(RealMatrix couplings, double radius) : couplings_(std::move(couplings)), radius_(radius) {
    if (couplings_.rows() != couplings_.cols()) throw std::domain_error("RingGeometry: couplings must be square");
    if ((couplings_ - couplings_.transpose()).cwiseAbs().maxCoeff() > 0)
      throw std::domain_error("RingGeometry: couplings must be symmetric");
    if (couplings_.diagonal().cwiseAbs().maxCoeff() > 0)
      throw std::domain_error("RingGeometry: self couplings must vanish");
  }

  RealMatrix couplings_;
  double radius_;
};

inline DenseOperator partial_trace(const DenseOperator& op, SubsystemLabel keep,
                                   const SystemConfig& config) {
  return partial_trace(op, keep, config.total_spins());
}

/// Thermal state 2^-N (1 + beta omega_A I_z + beta omega_B S_z).
/// Diagonal in the computational basis; all eigenvalues must be positive.
inline DenseOperator initial_state(const SystemConfig& config) {
  const int n = config.total_spins();
  const Eigen::Index dim = config.dim();
  const double scale = 1.0 / double(dim);
  Matrix rho = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double m_ring = z_weight(std::uint64_t(b) >> 1, n - 1);
    const double m_center = (b & 1) == 0 ? 0.5 : -0.5;
    const double val = scale * (1.0 + config.beta() * config.omega_a() * m_ring +
                                config.beta() * config.omega_b() * m_center);
    if (val <= 0.0) throw StateError("initial_state: non-positive eigenvalue; parameters outside the valid regime");
    rho(b, b) = val;
  }
  return DenseOperator(std::move(rho));
}

/// Ideal instantaneous pi/2 rotation about y of every spin,
/// U = exp(-i (pi/2)(I_y + S_y)), applied as an explicit conjugation.
/// The generator is a sum of commuting single-site terms, so U factorizes
/// into identical 2x2 rotations applied site by site.
inline DenseOperator apply_pulse(const DenseOperator& rho) {
  const int n = rho.num_qubits();
  const Eigen::Index dim = rho.dim();
  const double c = std::cos(kPi / 4.0), s = std::sin(kPi / 4.0);
  Matrix m = rho.mat;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index bit = Eigen::Index(1) << q;
    for (Eigen::Index a = 0; a < dim; ++a) {
      if (a & bit) continue;
      const Eigen::Index a1 = a | bit;
      const Eigen::RowVectorXcd top = c * m.row(a) - s * m.row(a1);
      m.row(a1) = s * m.row(a) + c * m.row(a1);
      m.row(a) = top;
    }
    for (Eigen::Index a = 0; a < dim; ++a) {
      if (a & bit) continue;
      const Eigen::Index a1 = a | bit;
      const Vector left = c * m.col(a) - s * m.col(a1);
      m.col(a1) = s * m.col(a) + c * m.col(a1);
      m.col(a) = left;
    }
  }
  return DenseOperator(std::move(m));
}

/// H_zz = g sum_i I_iz S_z, diagonal in the computational basis.
inline DenseOperator hamiltonian_zz(const SystemConfig& config) {
  const int n = config.total_spins();
  const Eigen::Index dim = config.dim();
  Matrix h = Matrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double m_ring = z_weight(std::uint64_t(b) >> 1, n - 1);
    const double m_center = (b & 1) == 0 ? 0.5 : -0.5;
    h(b, b) = config.g() * m_ring * m_center;
  }
  return DenseOperator(std::move(h));
}

/// Secular dipolar Hamiltonian sum_{i<j} d_ij (3 I_iz I_jz - I_i . I_j) on a
/// standalone ring register of geometry.num_sites() spins.
inline DenseOperator dipolar_ring_hamiltonian(const RingGeometry& geometry) {
  const int n = geometry.num_sites();
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double d = geometry.coupling(i - 1, j - 1);
      if (d == 0.0) continue;
      const Matrix zz = single_spin_operator(i, Axis::Z, n).mat * single_spin_operator(j, Axis::Z, n).mat;
      Matrix dot = zz;
      dot += single_spin_operator(i, Axis::X, n).mat * single_spin_operator(j, Axis::X, n).mat;
      dot += single_spin_operator(i, Axis::Y, n).mat * single_spin_operator(j, Axis::Y, n).mat;
      h += d * (3.0 * zz - dot);
    }
  return DenseOperator(std::move(h));
}

/// Dipolar Hamiltonian embedded in the full N-spin space (identity on the
/// central spin).
inline DenseOperator hamiltonian_dz(const RingGeometry& geometry, const SystemConfig& config) {
  if (geometry.num_sites() != config.num_ring_spins())
    throw std::domain_error("hamiltonian_dz: geometry does not match the ring size");
  return DenseOperator(kron(dipolar_ring_hamiltonian(geometry).mat, Matrix::Identity(2, 2)));
}

/// Unitary evolution rho(tau) = U rho0 U+ with U = exp(-i H t), t = 2 tau / g,
/// H = H_zz (+ H_dz when include_dipolar). Without the dipolar part H is
/// diagonal and the conjugation reduces to elementwise phases.
inline DenseOperator evolve_exact(const DenseOperator& rho0, const SystemConfig& config, double tau,
                                  bool include_dipolar = false,
                                  const std::optional<RingGeometry>& geometry = std::nullopt) {
  if (rho0.dim() != config.dim()) throw std::domain_error("evolve_exact: state dimension mismatch");
  const double t = 2.0 * tau / config.g();
  if (!include_dipolar) {
    const Matrix h = hamiltonian_zz(config).mat;
    const Eigen::Index dim = rho0.dim();
    Vector phase(dim);
    for (Eigen::Index b = 0; b < dim; ++b) phase(b) = std::exp(Complex(0, -t * h(b, b).real()));
    Matrix out = phase.asDiagonal() * rho0.mat * phase.conjugate().asDiagonal();
    return DenseOperator(std::move(out));
  }
  if (!geometry) throw std::domain_error("evolve_exact: include_dipolar requires a geometry");
  const Matrix h = hamiltonian_zz(config).mat + hamiltonian_dz(*geometry, config).mat;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases = (Complex(0, -t) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return DenseOperator(u * rho0.mat * u.adjoint());
}

/// Direct assembly of the evolved state
/// 2^-N {1 + beta omega_A [I_x cos(tau) + 2 I_y S_z sin(tau)]
///         + beta omega_B [S_x cos(2 tau I_z) + S_y sin(2 tau I_z)]}.
inline DenseOperator closed_form_state(const SystemConfig& config, double tau) {
  const int n = config.total_spins();
  const Eigen::Index ring_dim = config.ring_dim();
  const RealVector zdiag = ring_z_diagonal(n - 1);
  Matrix cos_d = Matrix::Zero(ring_dim, ring_dim);
  Matrix sin_d = Matrix::Zero(ring_dim, ring_dim);
  for (Eigen::Index b = 0; b < ring_dim; ++b) {
    cos_d(b, b) = std::cos(2.0 * tau * zdiag(b));
    sin_d(b, b) = std::sin(2.0 * tau * zdiag(b));
  }

  std::vector<int> ring(n - 1);
  for (int i = 0; i < n - 1; ++i) ring[i] = i + 1;
  const Matrix ix_ring = collective_operator(Axis::X, ring, n - 1).mat;
  const Matrix iy_ring = collective_operator(Axis::Y, ring, n - 1).mat;
  const Matrix id2 = Matrix::Identity(2, 2);

  Matrix rho = Matrix::Identity(config.dim(), config.dim());
  rho += config.beta() * config.omega_a() *
         (std::cos(tau) * kron(ix_ring, id2) + 2.0 * std::sin(tau) * kron(iy_ring, spin_half(Axis::Z)));
  rho += config.beta() * config.omega_b() *
         (kron(cos_d, spin_half(Axis::X)) + kron(sin_d, spin_half(Axis::Y)));
  rho /= double(config.dim());
  return DenseOperator(std::move(rho));
}

/// rho_A(tau) = 2^-(N-1) [1 + beta omega_A I_x cos(tau)].
inline DenseOperator reduced_state_A(const SystemConfig& config, double tau) {
  const int n = config.total_spins();
  std::vector<int> ring(n - 1);
  for (int i = 0; i < n - 1; ++i) ring[i] = i + 1;
  Matrix rho = Matrix::Identity(config.ring_dim(), config.ring_dim());
  rho += config.beta() * config.omega_a() * std::cos(tau) * collective_operator(Axis::X, ring, n - 1).mat;
  rho /= double(config.ring_dim());
  return DenseOperator(std::move(rho));
}

/// rho_B(tau) = 1/2 [1 + beta omega_B S_x cos^(N-1)(tau)].
inline DenseOperator reduced_state_B(const SystemConfig& config, double tau) {
  Matrix rho = Matrix::Identity(2, 2);
  rho += config.beta() * config.omega_b() * std::pow(std::cos(tau), config.num_ring_spins()) * spin_half(Axis::X);
  rho /= 2.0;
  return DenseOperator(std::move(rho));
}

}  // namespace spinring
