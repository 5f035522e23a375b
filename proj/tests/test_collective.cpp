#include <catch2/catch.hpp>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "spinring/collective.hpp"
#include "spinring/correlations.hpp"

using namespace spinring;

TEST_CASE("collective space bookkeeping") {
  for (int ring = 1; ring <= 6; ++ring) {
    const CollectiveSpace space = CollectiveSpace::build(ring);
    Eigen::Index total = 0;
    for (const auto& blk : space.blocks()) {
      CHECK(blk.size == int(std::lround(2 * blk.j)) + 1);
      CHECK(blk.mult >= 1);
      total += Eigen::Index(blk.mult) * blk.size;
    }
    CHECK(total == (Eigen::Index(1) << ring));
  }
}

TEST_CASE("collective backend reproduces the dense oracle exactly") {
  std::mt19937 rng(21);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int total : {3, 4, 5, 6}) {
    const SystemConfig c = spinring::testing::random_config(rng, total);
    for (double tau : {0.0, 0.45, 1.2}) {
      const DenseOperator rho = evolve_exact(apply_pulse(initial_state(c)), c, tau);
      const ConditionalEntropyEngine dense = ConditionalEntropyEngine::from_dense(rho);
      const ConditionalEntropyEngine reduced =
          CollectiveSpace::shared(total - 1).make_engine(rho);

      for (int rep = 0; rep < 8; ++rep) {
        double x = gauss(rng), y = gauss(rng), z = gauss(rng);
        const double norm = std::sqrt(x * x + y * y + z * z);
        const MeasurementDirection n = MeasurementDirection::from_components(x / norm, y / norm, z / norm);
        CHECK(reduced.conditional_entropy(n) == Approx(dense.conditional_entropy(n)).margin(1e-12));
      }
      CHECK(reduced.entropy_total() == Approx(dense.entropy_total()).margin(1e-12));
      CHECK(reduced.entropy_A() == Approx(dense.entropy_A()).margin(1e-12));
      CHECK(reduced.entropy_B() == Approx(dense.entropy_B()).margin(1e-12));
    }
  }
}

TEST_CASE("collective and dense correlation reports agree") {
  const SystemConfig c = SystemConfig::checked(5, 1.0, 0.04, 0.1);
  for (double tau : {0.3, 0.8, 1.3}) {
    NumericOptions dense_opt, coll_opt;
    dense_opt.backend = NumericBackend::Dense;
    coll_opt.backend = NumericBackend::Collective;
    const CorrelationReport a = numeric_correlations(c, tau, dense_opt);
    const CorrelationReport b = numeric_correlations(c, tau, coll_opt);
    CHECK(b.discord == Approx(a.discord).margin(1e-11));
    CHECK(b.classical == Approx(a.classical).margin(1e-11));
    CHECK(b.mutual_information == Approx(a.mutual_information).margin(1e-11));
    const double overlap = std::abs(a.optimal_direction.x * b.optimal_direction.x +
                                    a.optimal_direction.y * b.optimal_direction.y +
                                    a.optimal_direction.z * b.optimal_direction.z);
    CHECK(overlap > 1.0 - 1e-6);
  }
}

TEST_CASE("compress rejects states without ring permutation symmetry") {
  std::mt19937 rng(22);
  const int total = 4;
  const CollectiveSpace& space = CollectiveSpace::shared(total - 1);

  SECTION("random dense state") {
    const DenseOperator rho{spinring::testing::random_state(rng, 16)};
    CHECK_THROWS_AS(space.compress(rho), StateError);
  }
  SECTION("dipolar-evolved state with asymmetric couplings") {
    const SystemConfig c = SystemConfig::checked(total, 1.0, 0.2, 0.1);
    const RingGeometry geo = spinring::testing::random_geometry(rng, total - 1, 4.0);
    const DenseOperator rho = evolve_exact(apply_pulse(initial_state(c)), c, 0.9, true, geo);
    CHECK_THROWS_AS(space.compress(rho), StateError);
  }
  SECTION("numeric_correlations refuses the combination explicitly") {
    const SystemConfig c = SystemConfig::checked(total, 1.0, 0.2, 0.1);
    NumericOptions opt;
    opt.backend = NumericBackend::Collective;
    opt.include_dipolar = true;
    opt.geometry = RingGeometry::regular(total - 1, 1.0, 1.0);
    CHECK_THROWS_AS(numeric_correlations(c, 0.5, opt), std::domain_error);
  }
}
