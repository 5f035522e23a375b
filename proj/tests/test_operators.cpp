#include <catch2/catch.hpp>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spinring/operators.hpp"

using namespace spinring;

TEST_CASE("single spin operator on one spin") {
  const DenseOperator sz = single_spin_operator(1, Axis::Z, 1);
  REQUIRE(sz.dim() == 2);
  CHECK(sz.mat(0, 0).real() == Approx(0.5));
  CHECK(sz.mat(1, 1).real() == Approx(-0.5));
  CHECK(std::abs(sz.mat(0, 1)) == 0.0);
}

TEST_CASE("single spin operator embeds by Kronecker slots") {
  const DenseOperator sx1 = single_spin_operator(1, Axis::X, 2);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 2) = expected(2, 0) = expected(1, 3) = expected(3, 1) = 0.5;
  CHECK(max_abs_diff(sx1.mat, expected) < 1e-15);

  const DenseOperator sy2 = single_spin_operator(2, Axis::Y, 2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sy2.mat, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(0) == Approx(-0.5));
  CHECK(es.eigenvalues()(1) == Approx(-0.5));
  CHECK(es.eigenvalues()(2) == Approx(0.5));
  CHECK(es.eigenvalues()(3) == Approx(0.5));
}

TEST_CASE("single spin operator is Hermitian and traceless") {
  std::mt19937 rng(11);
  for (int n = 1; n <= 4; ++n)
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
      const DenseOperator op = single_spin_operator(1 + int(rng() % n), axis, n);
      CHECK(op.hermiticity_defect() < 1e-15);
      CHECK(std::abs(op.trace()) < 1e-14);
    }
}

TEST_CASE("single spin operator rejects out-of-range sites") {
  CHECK_THROWS_AS(single_spin_operator(0, Axis::X, 2), std::domain_error);
  CHECK_THROWS_AS(single_spin_operator(3, Axis::X, 2), std::domain_error);
}

TEST_CASE("collective operator sums site operators") {
  const DenseOperator iz = collective_operator(Axis::Z, {1, 2}, 2);
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1.0, 0.0, 0.0, -1.0;
  CHECK(max_abs_diff(iz.mat, expected) < 1e-15);

  const DenseOperator sx = collective_operator(Axis::X, {1}, 1);
  CHECK(max_abs_diff(sx.mat, spin_half(Axis::X)) < 1e-15);

  CHECK(std::abs(collective_operator(Axis::Y, {1, 2, 3}, 3).trace()) < 1e-13);
  CHECK_THROWS_AS(collective_operator(Axis::X, {}, 2), std::domain_error);
}

TEST_CASE("collective operators satisfy [I_x, I_y] = i I_z") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> sites;
    for (int i = 1; i <= n; ++i) sites.push_back(i);
    const Matrix ix = collective_operator(Axis::X, sites, n).mat;
    const Matrix iy = collective_operator(Axis::Y, sites, n).mat;
    const Matrix iz = collective_operator(Axis::Z, sites, n).mat;
    CHECK(max_abs_diff(ix * iy - iy * ix, Complex(0, 1) * iz) < 1e-12);
  }
}

TEST_CASE("partial trace factorizes product states") {
  std::mt19937 rng(22);
  const int total = 4;
  const Matrix rho_a = testing::random_state(rng, 8);
  const Matrix sigma = testing::random_hermitian(rng, 2);
  const DenseOperator full{kron(rho_a, sigma)};
  const DenseOperator reduced = partial_trace(full, SubsystemLabel::RingA, total);
  CHECK(max_abs_diff(reduced.mat, sigma.trace() * rho_a) < 1e-12);
  const DenseOperator reduced_b = partial_trace(full, SubsystemLabel::CentralB, total);
  CHECK(max_abs_diff(reduced_b.mat, rho_a.trace() * sigma) < 1e-12);
}

TEST_CASE("partial trace preserves trace and is linear") {
  std::mt19937 rng(33);
  const int total = 3;
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix h1 = testing::random_hermitian(rng, 8);
    const Matrix h2 = testing::random_hermitian(rng, 8);
    const double a = 0.3, b = -1.7;
    for (SubsystemLabel keep : {SubsystemLabel::RingA, SubsystemLabel::CentralB}) {
      const Matrix t1 = partial_trace(DenseOperator{h1}, keep, total).mat;
      const Matrix t2 = partial_trace(DenseOperator{h2}, keep, total).mat;
      const Matrix tsum = partial_trace(DenseOperator{a * h1 + b * h2}, keep, total).mat;
      CHECK(max_abs_diff(tsum, a * t1 + b * t2) < 1e-12);
      CHECK(std::abs(t1.trace() - h1.trace()) < 1e-12);
    }
  }
}

TEST_CASE("partial trace rejects mismatched dimensions") {
  const DenseOperator op{Matrix::Identity(4, 4)};
  CHECK_THROWS_AS(partial_trace(op, SubsystemLabel::RingA, 3), std::domain_error);
}

TEST_CASE("trace identities at pinned points") {
  auto [c1, s1] = trace_cos_sin_identities(2, kPi / 3.0);
  CHECK(c1 == Approx(1.0).margin(1e-12));
  CHECK(s1 == Approx(0.0).margin(1e-12));

  auto [c2, s2] = trace_cos_sin_identities(4, 0.0);
  CHECK(c2 == Approx(16.0));
  CHECK(s2 == Approx(0.0).margin(1e-12));

  auto [c3, s3] = trace_cos_sin_identities(3, kPi / 2.0);
  CHECK(c3 == Approx(0.0).margin(1e-12));
  CHECK(s3 == Approx(0.0).margin(1e-12));
}

TEST_CASE("trace identities match the closed form for random tau") {
  std::mt19937 rng(44);
  std::uniform_real_distribution<double> tau_dist(0.0, 2.0 * kPi);
  for (int ring = 1; ring <= 10; ++ring) {
    for (int rep = 0; rep < 50; ++rep) {
      const double tau = tau_dist(rng);
      auto [tr_cos, tr_sin] = trace_cos_sin_identities(ring, tau);
      const double expected = std::pow(2.0, ring) * std::pow(std::cos(tau), ring);
      CHECK(std::abs(tr_cos - expected) < 1e-10);
      CHECK(std::abs(tr_sin) < 1e-10);
    }
  }
}

TEST_CASE("trace identities agree with an explicit matrix cosine") {
  // Independent route: eigendecompose I_z built as a matrix and take
  // cos/sin of its spectrum.
  for (int ring : {1, 2, 3}) {
    std::vector<int> sites;
    for (int i = 1; i <= ring; ++i) sites.push_back(i);
    const Matrix iz = collective_operator(Axis::Z, sites, ring).mat;
    Eigen::SelfAdjointEigenSolver<Matrix> es(iz, Eigen::EigenvaluesOnly);
    const double tau = 0.83;
    double tr_cos = 0.0, tr_sin = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      tr_cos += std::cos(2.0 * tau * es.eigenvalues()(i));
      tr_sin += std::sin(2.0 * tau * es.eigenvalues()(i));
    }
    auto [c, s] = trace_cos_sin_identities(ring, tau);
    CHECK(c == Approx(tr_cos).margin(1e-12));
    CHECK(s == Approx(tr_sin).margin(1e-12));
  }
}

TEST_CASE("DenseOperator validates shape") {
  CHECK_THROWS_AS(DenseOperator{Matrix::Zero(3, 3)}, std::domain_error);
  CHECK_THROWS_AS(DenseOperator{Matrix::Zero(2, 4)}, std::domain_error);
  CHECK_NOTHROW(DenseOperator{Matrix::Zero(8, 8)});
}
