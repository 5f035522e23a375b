#pragma once

#include <optional>

#include "spinring/collective.hpp"
#include "spinring/qinfo.hpp"
#include "spinring/state.hpp"

namespace spinring {

enum class NumericBackend {
  Auto,        // dense up to ring dimension 256, reduced above
  Dense,       // brute force on the full 2^N space
  Collective,  // symmetry-reduced ring blocks (certified equivalent)
};

struct NumericOptions {
  MinimizeOptions minimize;
  NumericBackend backend = NumericBackend::Auto;
  bool include_dipolar = false;
  std::optional<RingGeometry> geometry;
};

namespace detail {

inline bool use_collective(const SystemConfig& config, const NumericOptions& opt) {
  if (opt.include_dipolar) {
    if (opt.backend == NumericBackend::Collective)
      throw std::domain_error("numeric_correlations: dipolar evolution breaks ring permutation symmetry; "
                              "the collective backend cannot be used");
    return false;
  }
  switch (opt.backend) {
    case NumericBackend::Dense: return false;
    case NumericBackend::Collective: return true;
    case NumericBackend::Auto: return config.ring_dim() > 256;
  }
  return false;
}

}  // namespace detail

/// Evolved state used by the numeric oracle: thermal state, pi/2 pulse, then
/// exact unitary zz (+ optional dipolar) evolution.
inline DenseOperator evolved_state(const SystemConfig& config, double tau,
                                   bool include_dipolar = false,
                                   const std::optional<RingGeometry>& geometry = std::nullopt) {
  const DenseOperator rho0 = apply_pulse(initial_state(config));
  return evolve_exact(rho0, config, tau, include_dipolar, geometry);
}

/// Brute-force correlations at one (config, tau) point:
/// C = S(rho_A) - min_n S_cond, D = I - C, with the minimum taken over all
/// projective measurement directions on the central spin.
inline CorrelationReport numeric_correlations(const SystemConfig& config, double tau,
                                              const NumericOptions& opt = {}) {
  const DenseOperator rho = evolved_state(config, tau, opt.include_dipolar, opt.geometry);

  ConditionalEntropyEngine engine =
      detail::use_collective(config, opt)
          ? CollectiveSpace::shared(config.num_ring_spins()).make_engine(rho)
          : ConditionalEntropyEngine::from_dense(rho);

  const MinimizeResult min = minimize_conditional_entropy(
      [&](const MeasurementDirection& n) { return engine.conditional_entropy(n); }, opt.minimize);

  const double s_a = engine.entropy_A();
  const double s_b = engine.entropy_B();
  const double s_total = engine.entropy_total();

  CorrelationReport report;
  report.tau = tau;
  report.conditional_entropy_min = min.entropy;
  report.optimal_direction = min.direction;
  report.classical = s_a - min.entropy;
  report.mutual_information = s_a + s_b - s_total;
  report.discord = report.mutual_information - report.classical;
  report.method = Method::Numeric;
  if (report.discord < -1e-9 || report.classical < -1e-9)
    throw StateError("numeric_correlations: negative correlation beyond tolerance");
  return report;
}

}  // namespace spinring
