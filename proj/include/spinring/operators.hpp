#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "spinring/types.hpp"

namespace spinring {

enum class Axis { X, Y, Z };

enum class SubsystemLabel { RingA, CentralB };

/// Spin-1/2 operator sigma_axis / 2 on a single site.
inline Matrix spin_half(Axis axis) {
  Matrix s(2, 2);
  switch (axis) {
    case Axis::X: s << 0.0, 0.5, 0.5, 0.0; break;
    case Axis::Y: s << 0.0, Complex(0, -0.5), Complex(0, 0.5), 0.0; break;
    case Axis::Z: s << 0.5, 0.0, 0.0, -0.5; break;
  }
  return s;
}

/// Spin operator at `site` (1-based, leftmost tensor factor first) embedded
/// in a register of `num_spins` spins, identity on all other factors.
inline DenseOperator single_spin_operator(int site, Axis axis, int num_spins) {
  if (num_spins < 1 || num_spins > kMaxTotalSpins)
    throw std::domain_error("single_spin_operator: num_spins out of range");
  if (site < 1 || site > num_spins)
    throw std::domain_error("single_spin_operator: site out of range");
  const Matrix s = spin_half(axis);
  const Eigen::Index dim_left = Eigen::Index(1) << (site - 1);
  const Eigen::Index dim_right = Eigen::Index(1) << (num_spins - site);
  const Eigen::Index dim = dim_left * 2 * dim_right;
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index l = 0; l < dim_left; ++l)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (s(a, b) == Complex(0, 0)) continue;
        for (Eigen::Index r = 0; r < dim_right; ++r)
          out((l * 2 + a) * dim_right + r, (l * 2 + b) * dim_right + r) = s(a, b);
      }
  return DenseOperator(std::move(out));
}

/// Sum of single-site spin operators over `sites`.
inline DenseOperator collective_operator(Axis axis, const std::vector<int>& sites, int num_spins) {
  if (sites.empty()) throw std::domain_error("collective_operator: empty site set");
  Matrix sum = Matrix::Zero(Eigen::Index(1) << num_spins, Eigen::Index(1) << num_spins);
  for (int site : sites) sum += single_spin_operator(site, axis, num_spins).mat;
  return DenseOperator(std::move(sum));
}

inline std::vector<int> ring_sites(int total_spins) {
  std::vector<int> sites(total_spins - 1);
  for (int i = 0; i < total_spins - 1; ++i) sites[i] = i + 1;
  return sites;
}

/// Collective ring operator I_alpha = sum over ring sites, on the full
/// N-spin space (central spin is the last factor).
inline DenseOperator ring_collective_operator(Axis axis, int total_spins) {
  return collective_operator(axis, ring_sites(total_spins), total_spins);
}

/// Trace out the last tensor factor (one qubit) of a raw matrix.
inline Matrix trace_out_last_qubit(const Matrix& m) {
  const Eigen::Index dim_a = m.rows() / 2;
  Matrix out(dim_a, dim_a);
  for (Eigen::Index a = 0; a < dim_a; ++a)
    for (Eigen::Index b = 0; b < dim_a; ++b)
      out(a, b) = m(2 * a, 2 * b) + m(2 * a + 1, 2 * b + 1);
  return out;
}

/// Trace out everything except the last tensor factor.
inline Matrix trace_out_all_but_last_qubit(const Matrix& m) {
  const Eigen::Index dim_a = m.rows() / 2;
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex acc(0, 0);
      for (Eigen::Index a = 0; a < dim_a; ++a) acc += m(2 * a + i, 2 * a + j);
      out(i, j) = acc;
    }
  return out;
}

/// Partial trace of an operator on the full N-spin space. RingA keeps the
/// first N-1 tensor factors, CentralB keeps the last one.
inline DenseOperator partial_trace(const DenseOperator& op, SubsystemLabel keep, int total_spins) {
  const Eigen::Index dim = Eigen::Index(1) << total_spins;
  if (op.dim() != dim) throw std::domain_error("partial_trace: operator dimension does not match total_spins");
  if (keep == SubsystemLabel::RingA) return DenseOperator(trace_out_last_qubit(op.mat));
  return DenseOperator(trace_out_all_but_last_qubit(op.mat));
}

/// z-projection eigenvalue of computational basis state `index` for a
/// register of `num_spins` spins (bit 0 of the factor means spin up).
inline double z_weight(std::uint64_t index, int num_spins) {
  return 0.5 * (num_spins - 2 * int(std::popcount(index)));
}

/// Diagonal of the collective I_z on a ring register, in basis order.
inline RealVector ring_z_diagonal(int num_ring_spins) {
  const Eigen::Index dim = Eigen::Index(1) << num_ring_spins;
  RealVector d(dim);
  for (Eigen::Index b = 0; b < dim; ++b) d(b) = z_weight(std::uint64_t(b), num_ring_spins);
  return d;
}

/// Traces of cos(2 tau I_z) and sin(2 tau I_z) on the 2^(N-1) ring space.
/// I_z is diagonal in the computational basis, so both are evaluated
/// elementwise on the diagonal.
inline std::pair<double, double> trace_cos_sin_identities(int num_ring_spins, double tau) {
  if (num_ring_spins < 1 || num_ring_spins >= kMaxTotalSpins)
    throw std::domain_error("trace_cos_sin_identities: ring size out of range");
  const RealVector d = ring_z_diagonal(num_ring_spins);
  double tr_cos = 0.0, tr_sin = 0.0;
  for (Eigen::Index b = 0; b < d.size(); ++b) {
    tr_cos += std::cos(2.0 * tau * d(b));
    tr_sin += std::sin(2.0 * tau * d(b));
  }
  return {tr_cos, tr_sin};
}

}  // namespace spinring
