#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "spinring/operators.hpp"
#include "spinring/state.hpp"
#include "spinring/types.hpp"

namespace spinring {

// Eigenvalues of a state may dip this far below zero before we refuse to
// treat the operand as a state; anything in [-kEigenvalueTol, 0) is clamped.
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kDegenerateBranchTol = 1e-14;

/// Unit vector on the Bloch sphere parametrizing the projective measurement
/// of the central spin.
struct MeasurementDirection {
  double x = 0.0, y = 0.0, z = 1.0;

  static MeasurementDirection from_components(double nx, double ny, double nz) {
    MeasurementDirection n{nx, ny, nz};
    if (std::abs(n.norm_sq() - 1.0) >= 1e-12)
      throw std::domain_error("MeasurementDirection: components must form a unit vector");
    return n;
  }

  static MeasurementDirection from_spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }

  double norm_sq() const { return x * x + y * y + z * z; }
  MeasurementDirection negated() const { return {-x, -y, -z}; }

  /// Tie-break ordering key: lexicographic on (|n_z|, |n_y|, |n_x|).
  std::array<double, 3> tie_break_key() const { return {std::abs(z), std::abs(y), std::abs(x)}; }
};

/// Projectors Pi_0 = 1/2 + n.S, Pi_1 = 1/2 - n.S on the central-spin space.
inline std::pair<Matrix, Matrix> projectors(const MeasurementDirection& n) {
  if (std::abs(n.norm_sq() - 1.0) >= 1e-12) throw std::domain_error("projectors: direction must be a unit vector");
  const Matrix ns = n.x * spin_half(Axis::X) + n.y * spin_half(Axis::Y) + n.z * spin_half(Axis::Z);
  const Matrix half = 0.5 * Matrix::Identity(2, 2);
  return {half + ns, half - ns};
}

namespace detail {

inline RealVector state_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// -sum lambda log2 lambda over clamped eigenvalues.
inline double entropy_bits_from_eigenvalues(const RealVector& eigs, double weight = 1.0) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    double lambda = eigs(i);
    if (lambda < -kEigenvalueTol) throw StateError("entropy: eigenvalue below -1e-10; operand is not a state");
    if (lambda <= 0.0) continue;
    s -= weight * lambda * std::log2(lambda);
  }
  return s;
}

}  // namespace detail

/// Von Neumann entropy in bits. Requires a Hermitian, trace-one operator with
/// eigenvalues >= -1e-10 (small negatives are clamped to zero).
inline double von_neumann_entropy(const DenseOperator& rho) {
  rho.assert_hermitian(1e-10);
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-10)
    throw StateError("von_neumann_entropy: trace is not one");
  return detail::entropy_bits_from_eigenvalues(detail::state_eigenvalues(rho.mat));
}

/// Post-measurement ensemble {p_k, rho_k} on subsystem A after a projective
/// measurement of the central spin along n.
struct MeasurementEnsemble {
  double p0 = 0.0, p1 = 0.0;
  DenseOperator rho0, rho1;
  bool branch0_degenerate = false, branch1_degenerate = false;
};

inline MeasurementEnsemble measure_B(const DenseOperator& rho, const MeasurementDirection& n) {
  if (rho.num_qubits() < 2)
    throw std::domain_error("measure_B: state must contain at least one ring spin besides the central one");
  const Eigen::Index dim_a = rho.dim() / 2;
  auto [pi0, pi1] = projectors(n);
  MeasurementEnsemble out;
  const Matrix id_a = Matrix::Identity(dim_a, dim_a);
  for (int k = 0; k < 2; ++k) {
    const Matrix proj_full = kron(id_a, k == 0 ? pi0 : pi1);
    const Matrix projected = proj_full * rho.mat * proj_full;
    const double p = projected.trace().real();
    Matrix rho_k;
    bool degenerate = p < kDegenerateBranchTol;
    if (degenerate) {
      // p * S(rho_k) contributes nothing; keep a valid placeholder state.
      rho_k = id_a / double(dim_a);
    } else {
      rho_k = trace_out_last_qubit(projected) / p;
    }
    if (k == 0) {
      out.p0 = p;
      out.rho0 = DenseOperator(std::move(rho_k));
      out.branch0_degenerate = degenerate;
    } else {
      out.p1 = p;
      out.rho1 = DenseOperator(std::move(rho_k));
      out.branch1_degenerate = degenerate;
    }
  }
  return out;
}

/// S_cond(n) = p_0 S(rho_0) + p_1 S(rho_1), by direct projection.
inline double conditional_entropy(const DenseOperator& rho, const MeasurementDirection& n) {
  const MeasurementEnsemble e = measure_B(rho, n);
  double s = 0.0;
  if (!e.branch0_degenerate) s += e.p0 * von_neumann_entropy(e.rho0);
  if (!e.branch1_degenerate) s += e.p1 * von_neumann_entropy(e.rho1);
  return s;
}

/// Measurement engine over a state on (A tensor qubit), stored as one or more
/// diagonal blocks carrying multiplicities. The dense path is the single
/// block [rho, mult 1]; the collective path feeds symmetry-reduced blocks.
///
/// For each block, Tr_B[Pi_k rho Pi_k] = (P +/- n.A)/2 with P = Tr_B[rho] and
/// A_a = Tr_B[S_a rho + rho S_a]; the bilinear term Tr_B[(n.S) rho (n.S)]
/// equals P/4 by cyclicity of the partial trace in B-only factors.
class ConditionalEntropyEngine {
 public:
  struct Block {
    Matrix full;               // state block on (A_j tensor C^2)
    Matrix p;                  // Tr_B of the block
    std::array<Matrix, 3> a;   // Tr_B[S_alpha rho + rho S_alpha]
    double mult = 1.0;
  };

  static ConditionalEntropyEngine from_dense(const DenseOperator& rho) {
    ConditionalEntropyEngine engine;
    engine.add_block(rho.mat, 1.0);
    return engine;
  }

  static ConditionalEntropyEngine from_blocks(const std::vector<Matrix>& blocks,
                                              const std::vector<double>& mults) {
    ConditionalEntropyEngine engine;
    for (size_t i = 0; i < blocks.size(); ++i) engine.add_block(blocks[i], mults[i]);
    return engine;
  }

  void add_block(const Matrix& m, double mult) {
    Block blk;
    blk.full = m;
    blk.mult = mult;
    const Eigen::Index dim_a = m.rows() / 2;
    std::array<Matrix, 4> r;  // r[2*i+j](a,b) = m(2a+i, 2b+j)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Matrix sub(dim_a, dim_a);
        for (Eigen::Index a = 0; a < dim_a; ++a)
          for (Eigen::Index b = 0; b < dim_a; ++b) sub(a, b) = m(2 * a + i, 2 * b + j);
        r[2 * i + j] = std::move(sub);
      }
    blk.p = r[0] + r[3];
    const std::array<Axis, 3> axes{Axis::X, Axis::Y, Axis::Z};
    for (int alpha = 0; alpha < 3; ++alpha) {
      const Matrix s = spin_half(axes[alpha]);
      Matrix t = Matrix::Zero(dim_a, dim_a);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (s(i, j) != Complex(0, 0)) t += s(i, j) * r[2 * j + i];  // Tr_B[S rho]
      blk.a[alpha] = t + t.adjoint();
    }
    blocks_.push_back(std::move(blk));
  }

  double conditional_entropy(const MeasurementDirection& n) const {
    double total = 0.0;
    std::vector<std::pair<double, double>> branch_eigs;
    for (int k = 0; k < 2; ++k) {
      const double sign = k == 0 ? 1.0 : -1.0;
      double p = 0.0;
      branch_eigs.clear();
      for (const Block& blk : blocks_) {
        const Matrix t = 0.5 * (blk.p + sign * (n.x * blk.a[0] + n.y * blk.a[1] + n.z * blk.a[2]));
        RealVector eigs = detail::state_eigenvalues(t);
        for (Eigen::Index i = 0; i < eigs.size(); ++i) {
          double lambda = eigs(i);
          if (lambda < -kEigenvalueTol) throw StateError("conditional_entropy: branch operator is not PSD");
          if (lambda < 0.0) lambda = 0.0;
          p += blk.mult * lambda;
          branch_eigs.push_back({lambda, blk.mult});
        }
      }
      if (p < kDegenerateBranchTol) continue;
      double s = 0.0;
      for (const auto& [lambda, mult] : branch_eigs) {
        if (lambda <= 0.0) continue;
        s -= mult * lambda * std::log2(lambda / p);
      }
      total += s;  // equals p * S(rho_k)
    }
    return total;
  }

  double entropy_total() const {
    double s = 0.0;
    for (const Block& blk : blocks_) s += detail::entropy_bits_from_eigenvalues(detail::state_eigenvalues(blk.full), blk.mult);
    return s;
  }

  double entropy_A() const {
    double s = 0.0;
    for (const Block& blk : blocks_) s += detail::entropy_bits_from_eigenvalues(detail::state_eigenvalues(blk.p), blk.mult);
    return s;
  }

  double entropy_B() const {
    Matrix rho_b = Matrix::Zero(2, 2);
    for (const Block& blk : blocks_) rho_b += blk.mult * trace_out_all_but_last_qubit(blk.full);
    return detail::entropy_bits_from_eigenvalues(detail::state_eigenvalues(rho_b));
  }

 private:
  std::vector<Block> blocks_;
};

struct MinimizeOptions {
  int theta_points = 64;   // coarse grid over the half-sphere (n and -n equivalent)
  int phi_points = 128;
  int polish_starts = 5;
  double entropy_tol = 1e-12;
  double angle_tol = 1e-8;
  int max_polish_iters = 400;
};

struct MinimizeResult {
  MeasurementDirection direction;
  double entropy = 0.0;
};

namespace detail {

struct Candidate {
  double theta, phi, value;
};

inline bool tie_break_less(const MeasurementDirection& a, const MeasurementDirection& b) {
  return a.tie_break_key() < b.tie_break_key();
}

/// Nelder-Mead on (theta, phi); deterministic, derivative-free.
inline Candidate nelder_mead(const std::function<double(double, double)>& f, double theta0,
                             double phi0, double step, const MinimizeOptions& opt) {
  struct Vertex {
    double t, p, v;
  };
  std::array<Vertex, 3> simplex{Vertex{theta0, phi0, f(theta0, phi0)},
                                Vertex{theta0 + step, phi0, f(theta0 + step, phi0)},
                                Vertex{theta0, phi0 + step, f(theta0, phi0 + step)}};
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };
  for (int iter = 0; iter < opt.max_polish_iters; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double diam = std::max({std::hypot(simplex[0].t - simplex[1].t, simplex[0].p - simplex[1].p),
                                  std::hypot(simplex[0].t - simplex[2].t, simplex[0].p - simplex[2].p),
                                  std::hypot(simplex[1].t - simplex[2].t, simplex[1].p - simplex[2].p)});
    if (simplex[2].v - simplex[0].v < opt.entropy_tol && diam < opt.angle_tol) break;
    const double ct = 0.5 * (simplex[0].t + simplex[1].t);
    const double cp = 0.5 * (simplex[0].p + simplex[1].p);
    const double rt = ct + (ct - simplex[2].t), rp = cp + (cp - simplex[2].p);
    const double rv = f(rt, rp);
    if (rv < simplex[0].v) {
      const double et = ct + 2.0 * (ct - simplex[2].t), ep = cp + 2.0 * (cp - simplex[2].p);
      const double ev = f(et, ep);
      simplex[2] = ev < rv ? Vertex{et, ep, ev} : Vertex{rt, rp, rv};
    } else if (rv < simplex[1].v) {
      simplex[2] = Vertex{rt, rp, rv};
    } else {
      const double kt = ct + 0.5 * (simplex[2].t - ct), kp = cp + 0.5 * (simplex[2].p - cp);
      const double kv = f(kt, kp);
      if (kv < simplex[2].v) {
        simplex[2] = Vertex{kt, kp, kv};
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i].t = simplex[0].t + 0.5 * (simplex[i].t - simplex[0].t);
          simplex[i].p = simplex[0].p + 0.5 * (simplex[i].p - simplex[0].p);
          simplex[i].v = f(simplex[i].t, simplex[i].p);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex[0].t, simplex[0].p, simplex[0].v};
}

}  // namespace detail

/// Global minimum of S_cond over the Bloch sphere: coarse grid over the
/// half-sphere followed by derivative-free refinement from the best cells.
/// Ties within entropy_tol are broken toward the lexicographically largest
/// (|n_z|, |n_y|, |n_x|) so results are deterministic.
inline MinimizeResult minimize_conditional_entropy(
    const std::function<double(const MeasurementDirection&)>& objective,
    const MinimizeOptions& opt = {}) {
  if (opt.theta_points < 2 || opt.phi_points < 1 || opt.polish_starts < 0)
    throw std::domain_error("minimize_conditional_entropy: invalid grid options");
  auto f_angles = [&](double theta, double phi) {
    return objective(MeasurementDirection::from_spherical(theta, phi));
  };

  const double theta_step = 0.5 * kPi / (opt.theta_points - 1);
  const double phi_step = 2.0 * kPi / opt.phi_points;
  std::vector<detail::Candidate> grid;
  grid.reserve(size_t(opt.theta_points) * size_t(opt.phi_points));
  for (int i = 0; i < opt.theta_points; ++i) {
    const double theta = i * theta_step;
    for (int j = 0; j < opt.phi_points; ++j) {
      const double phi = j * phi_step;
      grid.push_back({theta, phi, f_angles(theta, phi)});
    }
  }

  std::vector<size_t> order(grid.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return grid[a].value < grid[b].value; });

  std::vector<detail::Candidate> candidates;
  candidates.push_back(grid[order[0]]);
  const int starts = std::min<int>(opt.polish_starts, int(order.size()));
  for (int s = 0; s < starts; ++s) {
    const detail::Candidate& c = grid[order[size_t(s)]];
    candidates.push_back(detail::nelder_mead(f_angles, c.theta, c.phi, 0.5 * std::max(theta_step, phi_step), opt));
  }

  double best_value = candidates.front().value;
  for (const auto& c : candidates) best_value = std::min(best_value, c.value);

  MeasurementDirection best_dir;
  bool has = false;
  for (const auto& c : candidates) {
    if (c.value > best_value + opt.entropy_tol) continue;
    const MeasurementDirection dir = MeasurementDirection::from_spherical(c.theta, c.phi);
    if (!has || detail::tie_break_less(best_dir, dir)) {
      best_dir = dir;
      has = true;
    }
  }
  return {best_dir, best_value};
}

inline MinimizeResult minimize_conditional_entropy(const DenseOperator& rho,
                                                   const MinimizeOptions& opt = {}) {
  const ConditionalEntropyEngine engine = ConditionalEntropyEngine::from_dense(rho);
  return minimize_conditional_entropy(
      [&](const MeasurementDirection& n) { return engine.conditional_entropy(n); }, opt);
}

/// I(rho) = S(rho_A) + S(rho_B) - S(rho) with exact entropies.
inline double mutual_information(const DenseOperator& rho, const SystemConfig& config) {
  if (rho.dim() != config.dim()) throw std::domain_error("mutual_information: dimension mismatch");
  const double s_a = von_neumann_entropy(partial_trace(rho, SubsystemLabel::RingA, config.total_spins()));
  const double s_b = von_neumann_entropy(partial_trace(rho, SubsystemLabel::CentralB, config.total_spins()));
  return s_a + s_b - von_neumann_entropy(rho);
}

enum class Method { Numeric, AnalyticHT };

/// Correlations at one (config, tau) point, in bits.
struct CorrelationReport {
  double tau = 0.0;
  double discord = 0.0;
  double classical = 0.0;
  double mutual_information = 0.0;
  double conditional_entropy_min = 0.0;
  MeasurementDirection optimal_direction;
  Method method = Method::Numeric;
};

}  // namespace spinring
