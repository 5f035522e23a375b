#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinring {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kLn2 = 0.6931471805599453094172321214581766;
inline constexpr double kPi = 3.1415926535897932384626433832795029;

// Dense matrices only; 2^14 is the largest Hilbert space we allow.
inline constexpr int kMaxTotalSpins = 14;

/// Bad construction parameters or out-of-range operation arguments.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// The operand is not (numerically) a valid quantum state.
class StateError : public std::domain_error {
 public:
  explicit StateError(const std::string& what) : std::domain_error(what) {}
};

/// No closed-form regime applies; callers should fall back to the numeric path.
class RegimeError : public std::domain_error {
 public:
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Square complex matrix on a 2^k dimensional Hilbert space.
struct DenseOperator {
  Matrix mat;

  DenseOperator() = default;
  explicit DenseOperator(Matrix m) : mat(std::move(m)) {
    if (mat.rows() != mat.cols()) throw std::domain_error("DenseOperator: matrix must be square");
    if (num_qubits() < 1) throw std::domain_error("DenseOperator: dimension must be a power of two >= 2");
  }

  Eigen::Index dim() const { return mat.rows(); }

  /// Number of tensor factors; throws unless dim is a power of two.
  int num_qubits() const {
    Eigen::Index d = mat.rows();
    int k = 0;
    while (d > 1 && d % 2 == 0) { d /= 2; ++k; }
    if (d != 1 || k < 1) throw std::domain_error("DenseOperator: dimension is not a power of two >= 2");
    return k;
  }

  Complex trace() const { return mat.trace(); }

  double hermiticity_defect() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }

  void assert_hermitian(double tol = 1e-12) const {
    if (hermiticity_defect() >= tol) throw StateError("operator is not Hermitian within tolerance");
  }
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

}  // namespace spinring
