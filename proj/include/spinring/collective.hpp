#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "spinring/qinfo.hpp"

namespace spinring {

/// Symmetry-reduced representation of the ring Hilbert space.
///
/// Every operator this library evolves or measures without the dipolar term
/// lies in the algebra generated by the collective ring operators, so it is
/// block diagonal over total-spin multiplets and acts identically on all
/// multiplicity copies of a given j. The space stores one multiplet per j
/// (built numerically from highest-weight vectors, i.e. the kernel of the
/// collective raising operator on each I_z sector) plus the multiplicities,
/// which is enough to reproduce spectra, traces and partial traces of the
/// full 2^(N-1) ring exactly. compress() certifies that the input state
/// really is collective before discarding anything.
class CollectiveSpace {
 public:
  struct BlockInfo {
    double j = 0.0;
    int mult = 0;
    int offset = 0;  // column offset of the multiplet in V
    int size = 0;    // 2j + 1
  };

  struct Compressed {
    std::vector<Matrix> blocks;  // each on (multiplet tensor C^2)
    std::vector<double> mults;
  };

  static const CollectiveSpace& shared(int num_ring_spins) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CollectiveSpace>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(num_ring_spins);
    if (it == cache.end())
      it = cache.emplace(num_ring_spins, std::make_unique<CollectiveSpace>(build(num_ring_spins))).first;
    return *it->second;
  }

  static CollectiveSpace build(int num_ring_spins) {
    if (num_ring_spins < 1 || num_ring_spins >= kMaxTotalSpins)
      throw std::domain_error("CollectiveSpace: ring size out of range");
    CollectiveSpace space;
    space.num_ring_ = num_ring_spins;
    const int n = num_ring_spins;
    const Eigen::Index dim = Eigen::Index(1) << n;

    Matrix i_plus = Matrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b)
      for (int q = 0; q < n; ++q)
        if (b & (Eigen::Index(1) << q)) i_plus(b & ~(Eigen::Index(1) << q), b) += 1.0;
    const Matrix i_minus = i_plus.adjoint();

    std::vector<std::vector<Eigen::Index>> sector(n + 1);
    for (Eigen::Index b = 0; b < dim; ++b) sector[std::popcount(std::uint64_t(b))].push_back(b);

    std::vector<Matrix> multiplets;
    int total_cols = 0;
    for (int k = 0; 2 * k <= n; ++k) {
      const int mult = int(binomial(n, k)) - (k > 0 ? int(binomial(n, k - 1)) : 0);
      if (mult <= 0) continue;
      Vector highest = Vector::Zero(dim);
      if (k == 0) {
        highest(sector[0][0]) = 1.0;
      } else {
        Matrix block(sector[k - 1].size(), sector[k].size());
        for (size_t r = 0; r < sector[k - 1].size(); ++r)
          for (size_t c = 0; c < sector[k].size(); ++c) block(r, c) = i_plus(sector[k - 1][r], sector[k][c]);
        const Matrix kernel = Eigen::FullPivLU<Matrix>(block).kernel();
        if (kernel.cols() != mult)
          throw std::runtime_error("CollectiveSpace: unexpected highest-weight multiplicity");
        for (size_t c = 0; c < sector[k].size(); ++c) highest(sector[k][c]) = kernel(c, 0);
      }
      highest /= highest.norm();

      const double j = 0.5 * (n - 2 * k);
      const int size = int(std::lround(2 * j)) + 1;
      Matrix cols(dim, size);
      Vector cur = highest;
      cols.col(0) = cur;
      for (int step = 1; step < size; ++step) {
        cur = i_minus * cur;
        cur /= cur.norm();
        cols.col(step) = cur;
      }
      space.blocks_.push_back({j, mult, total_cols, size});
      multiplets.push_back(std::move(cols));
      total_cols += size;
    }

    Eigen::Index check = 0;
    for (const BlockInfo& b : space.blocks_) check += Eigen::Index(b.mult) * b.size;
    if (check != dim) throw std::runtime_error("CollectiveSpace: multiplicity bookkeeping failed");

    space.v_.resize(dim, total_cols);
    for (size_t i = 0; i < multiplets.size(); ++i)
      space.v_.block(0, space.blocks_[i].offset, dim, space.blocks_[i].size) = multiplets[i];
    space.w_ = kron(space.v_, Matrix::Identity(2, 2));
    return space;
  }

  int num_ring_spins() const { return num_ring_; }
  const std::vector<BlockInfo>& blocks() const { return blocks_; }

  /// Project a full (ring tensor central-spin) state into the reduced space.
  /// Throws StateError when the state is not ring-permutation symmetric, i.e.
  /// when the projection would lose information.
  Compressed compress(const DenseOperator& rho_full) const {
    const Eigen::Index dim = (Eigen::Index(1) << num_ring_) * 2;
    if (rho_full.dim() != dim) throw std::domain_error("CollectiveSpace::compress: dimension mismatch");
    const Matrix reduced = w_.adjoint() * (rho_full.mat * w_);

    Compressed out;
    double trace_sum = 0.0, frob_sum = 0.0;
    for (const BlockInfo& info : blocks_) {
      Matrix blk = reduced.block(2 * info.offset, 2 * info.offset, 2 * info.size, 2 * info.size);
      trace_sum += info.mult * blk.trace().real();
      frob_sum += info.mult * blk.squaredNorm();
      out.blocks.push_back(std::move(blk));
      out.mults.push_back(double(info.mult));
    }

    double cross = 0.0;
    for (size_t a = 0; a < blocks_.size(); ++a)
      for (size_t b = 0; b < blocks_.size(); ++b) {
        if (a == b) continue;
        cross = std::max(cross, max_abs(reduced.block(2 * blocks_[a].offset, 2 * blocks_[b].offset,
                                                      2 * blocks_[a].size, 2 * blocks_[b].size)));
      }
    const double trace_err = std::abs(trace_sum - rho_full.mat.trace().real());
    const double frob_err = std::abs(frob_sum - rho_full.mat.squaredNorm());
    if (cross > 1e-12 || trace_err > 1e-10 || frob_err > 1e-10)
      throw StateError("CollectiveSpace::compress: state is not ring-permutation symmetric");
    return out;
  }

  ConditionalEntropyEngine make_engine(const DenseOperator& rho_full) const {
    const Compressed c = compress(rho_full);
    return ConditionalEntropyEngine::from_blocks(c.blocks, c.mults);
  }

 private:
  static std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r = r * std::uint64_t(n - i) / std::uint64_t(i + 1);
    return r;
  }

  int num_ring_ = 0;
  Matrix v_, w_;
  std::vector<BlockInfo> blocks_;
};

}  // namespace spinring
