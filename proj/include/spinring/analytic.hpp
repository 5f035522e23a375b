#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spinring/qinfo.hpp"
#include "spinring/state.hpp"
#include "spinring/types.hpp"

namespace spinring {

/// Which interaction component carries the quantum correlations, i.e. which
/// projector axis minimizes the conditional entropy in closed form.
enum class RegimeTag { IySz, IzSy, IzSx, Unclassified };

inline const char* regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::IySz: return "IySz";
    case RegimeTag::IzSy: return "IzSy";
    case RegimeTag::IzSx: return "IzSx";
    case RegimeTag::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

/// Axis along which the conditional entropy is minimized in a given regime.
inline char regime_axis(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::IySz: return 'z';
    case RegimeTag::IzSy: return 'y';
    case RegimeTag::IzSx: return 'x';
    case RegimeTag::Unclassified: return '?';
  }
  return '?';
}

/// Dimensionless second-order expansion parameters.
struct HtParameters {
  int total_spins = 0;
  double u = 0.0;  // (N-1) beta omega_B / 2
  double v = 0.0;  // (N-1) beta omega_A / 2

  static HtParameters from_config(const SystemConfig& config) {
    return {config.total_spins(), config.u(), config.v()};
  }

  int ring() const { return total_spins - 1; }

  /// Direction-independent part of the conditional-entropy bracket.
  double a_uv() const {
    const double n1 = ring();
    return n1 * v * v - 2.0 * n1 * n1 * n1 * kLn2;
  }
};

namespace ht {

/// Coefficient of n_x^2 in the conditional-entropy curly bracket:
/// u^2 (1 + cos^(N-1)(2 tau) - 2 cos^(2(N-1))(tau)) / 2 - (N-1) v^2 sin^2(tau).
inline double bracket_x(int total_spins, double u, double v, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  const double c = std::pow(std::cos(tau), 2 * n1);
  const double s = std::sin(tau);
  return 0.5 * u * u * (1.0 + c2 - 2.0 * c) - n1 * v * v * s * s;
}

/// Coefficient of n_y^2: u^2 (1 - cos^(N-1)(2 tau)) / 2 - (N-1) v^2 sin^2(tau).
inline double bracket_y(int total_spins, double u, double v, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  const double s = std::sin(tau);
  return 0.5 * u * u * (1.0 - c2) - n1 * v * v * s * s;
}

inline double discord_iysz(int total_spins, double u, double tau) {
  const int n1 = total_spins - 1;
  return u * u * (1.0 - std::pow(std::cos(tau), 2 * n1)) / (2.0 * kLn2 * n1 * n1);
}

inline double discord_izsy(int total_spins, double u, double v, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  const double c = std::pow(std::cos(tau), 2 * n1);
  const double s = std::sin(tau);
  return (n1 * v * v * s * s + 0.5 * u * u * (c2 + 1.0 - 2.0 * c)) / (2.0 * kLn2 * n1 * n1);
}

inline double discord_izsx(int total_spins, double u, double v, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  const double s = std::sin(tau);
  return (n1 * v * v * s * s + 0.5 * u * u * (1.0 - c2)) / (2.0 * kLn2 * n1 * n1);
}

inline double classical_iysz(int total_spins, double v, double tau) {
  const int n1 = total_spins - 1;
  const double s = std::sin(tau);
  return v * v * s * s / (2.0 * kLn2 * n1);
}

inline double classical_izsy(int total_spins, double u, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  return u * u * (1.0 - c2) / (4.0 * kLn2 * n1 * n1);
}

inline double classical_izsx(int total_spins, double u, double tau) {
  const int n1 = total_spins - 1;
  const double c2 = std::pow(std::cos(2.0 * tau), n1);
  const double c = std::pow(std::cos(tau), 2 * n1);
  return u * u * (1.0 + c2 - 2.0 * c) / (4.0 * kLn2 * n1 * n1);
}

}  // namespace ht

/// Total entropy to second order: N - [(N-1)(beta omega_A)^2 + (beta omega_B)^2] / (8 ln 2).
inline double ht_entropy_total(const SystemConfig& config) {
  const double ba = config.beta() * config.omega_a();
  const double bb = config.beta() * config.omega_b();
  return config.total_spins() - (config.num_ring_spins() * ba * ba + bb * bb) / (8.0 * kLn2);
}

/// Ring entropy: N-1 - (N-1)(beta omega_A)^2 cos^2(tau) / (8 ln 2).
inline double ht_entropy_A(const SystemConfig& config, double tau) {
  const double ba = config.beta() * config.omega_a();
  const double c = std::cos(tau);
  return config.num_ring_spins() * (1.0 - ba * ba * c * c / (8.0 * kLn2));
}

/// Central-spin entropy: 1 - (beta omega_B)^2 cos^(2(N-1))(tau) / (8 ln 2).
inline double ht_entropy_B(const SystemConfig& config, double tau) {
  const double bb = config.beta() * config.omega_b();
  const double c = std::pow(std::cos(tau), 2 * config.num_ring_spins());
  return 1.0 - bb * bb * c / (8.0 * kLn2);
}

/// Total correlations assembled from the three second-order entropies.
inline double ht_mutual_information(const SystemConfig& config, double tau) {
  return ht_entropy_A(config, tau) + ht_entropy_B(config, tau) - ht_entropy_total(config);
}

/// Second-order conditional entropy; depends on the measurement direction
/// only through n_x^2 and n_y^2.
inline double ht_conditional_entropy(const SystemConfig& config, double tau,
                                     const MeasurementDirection& n) {
  const HtParameters p = HtParameters::from_config(config);
  const double n1 = p.ring();
  const double bracket = n.x * n.x * ht::bracket_x(p.total_spins, p.u, p.v, tau) +
                         n.y * n.y * ht::bracket_y(p.total_spins, p.u, p.v, tau) + p.a_uv();
  return -bracket / (2.0 * kLn2 * n1 * n1);
}

inline double tau_arctan_sqrt2() { return std::atan(std::sqrt(2.0)); }

/// Boundary values of gamma = omega_A / omega_B = v / u for the closed-form
/// regime conditions at a given N.
inline double gamma_boundary_iysz() { return 1.0; }
inline double gamma_boundary_izsy_small_tau(int total_spins) {
  return 1.0 / std::sqrt(double(total_spins - 1));
}
inline double gamma_boundary_izsy_mid_tau(int total_spins) {
  const int n1 = total_spins - 1;
  return std::sqrt(3.0 * (1.0 - std::pow(3.0, -n1)) / (4.0 * n1));
}
inline double gamma_boundary_izsx(int total_spins) {
  return 1.0 / std::sqrt(2.0 * double(total_spins - 1));
}

struct RegimeClassification {
  RegimeTag tag = RegimeTag::Unclassified;
  bool near_boundary = false;  // a decisive comparison fell within the 1e-12 guard band
  std::string condition;
};

/// Regime classification on the principal window 0 < tau < pi/2. All
/// condition checks use strict inequalities; exact boundary points are
/// Unclassified.
inline RegimeClassification classify_regime_uv(int total_spins, double u, double v, double tau) {
  if (!(tau > 0.0 && tau < 0.5 * kPi))
    throw std::domain_error("classify_regime: tau outside the principal window (0, pi/2)");
  const int n1 = total_spins - 1;
  const double guard = 1e-12;
  RegimeClassification out;

  auto near = [&](double lhs, double rhs) { return std::abs(lhs - rhs) < guard; };

  if (near(v, u) || near(tau, 0.25 * kPi) || near(tau, tau_arctan_sqrt2())) out.near_boundary = true;

  if (v > u) {
    out.tag = RegimeTag::IySz;
    out.condition = "v > u";
    return out;
  }

  const double u2 = u * u, v2 = v * v;
  const double small_tau_threshold = n1 * v2;
  const double mid_tau_threshold = (4.0 / 3.0) * n1 / (1.0 - std::pow(3.0, -n1)) * v2;
  const double izsx_threshold = 2.0 * n1 * v2;
  if (near(u2, small_tau_threshold) || near(u2, mid_tau_threshold) || near(u2, izsx_threshold))
    out.near_boundary = true;

  if (tau < 0.25 * kPi && u2 > small_tau_threshold) {
    out.tag = RegimeTag::IzSy;
    out.condition = "u^2 > (N-1) v^2, 0 < tau < pi/4";
    return out;
  }
  if (tau >= 0.25 * kPi && tau < tau_arctan_sqrt2() && u2 > mid_tau_threshold) {
    out.tag = RegimeTag::IzSy;
    out.condition = "u^2 > (4/3)(N-1)/(1-3^-(N-1)) v^2, pi/4 <= tau < arctan sqrt(2)";
    return out;
  }
  if (tau > tau_arctan_sqrt2() && total_spins % 2 == 1 && u2 > izsx_threshold) {
    out.tag = RegimeTag::IzSx;
    out.condition = "u^2 > 2(N-1) v^2, N odd, arctan sqrt(2) < tau < pi/2";
    return out;
  }
  out.tag = RegimeTag::Unclassified;
  out.condition = "no closed-form condition holds";
  return out;
}

inline RegimeClassification classify_regime_detailed(const SystemConfig& config, double tau) {
  return classify_regime_uv(config.total_spins(), config.u(), config.v(), tau);
}

inline RegimeTag classify_regime(const SystemConfig& config, double tau) {
  return classify_regime_detailed(config, tau).tag;
}

/// Closed-form discord for the active regime. Unclassified points raise
/// RegimeError: use the numeric path there.
inline std::pair<double, RegimeTag> ht_discord(const SystemConfig& config, double tau) {
  const RegimeTag tag = classify_regime(config, tau);
  const HtParameters p = HtParameters::from_config(config);
  switch (tag) {
    case RegimeTag::IySz: return {ht::discord_iysz(p.total_spins, p.u, tau), tag};
    case RegimeTag::IzSy: return {ht::discord_izsy(p.total_spins, p.u, p.v, tau), tag};
    case RegimeTag::IzSx: return {ht::discord_izsx(p.total_spins, p.u, p.v, tau), tag};
    case RegimeTag::Unclassified: break;
  }
  throw RegimeError("ht_discord: no closed-form regime applies; use numeric_correlations");
}

/// Closed-form classical correlations for the active regime.
inline std::pair<double, RegimeTag> ht_classical(const SystemConfig& config, double tau) {
  const RegimeTag tag = classify_regime(config, tau);
  const HtParameters p = HtParameters::from_config(config);
  switch (tag) {
    case RegimeTag::IySz: return {ht::classical_iysz(p.total_spins, p.v, tau), tag};
    case RegimeTag::IzSy: return {ht::classical_izsy(p.total_spins, p.u, tau), tag};
    case RegimeTag::IzSx: return {ht::classical_izsx(p.total_spins, p.u, tau), tag};
    case RegimeTag::Unclassified: break;
  }
  throw RegimeError("ht_classical: no closed-form regime applies; use numeric_correlations");
}

/// One violated inequality, for diagnostics.
struct InequalityViolation {
  std::string check;
  double tau = 0.0, gamma = 0.0, margin = 0.0;
};

struct InequalityReport {
  int points_checked = 0;
  std::vector<InequalityViolation> violations;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool ok() const { return violations.empty(); }
};

/// Numerically confirms the coefficient inequalities behind the regime
/// classification on the given grids:
///   B1: 1 + cos^(N-1)(2t) - 2 cos^(2(N-1))(t) <= 2 (N-1) sin^2 t, all tau;
///   B2: 1 - cos^(N-1)(2t) <= 2 (N-1) sin^2 t, all tau;
///   in the regime where u^2 > (N-1) v^2 and 0 < tau < pi/4, and in the
///   regime where u^2 > (4/3)(N-1)/(1-3^-(N-1)) v^2 and pi/4 <= tau <
///   arctan sqrt(2): the n_y bracket dominates the n_x bracket and is
///   non-negative;
///   in the regime where u^2 > 2(N-1) v^2, N odd, arctan sqrt(2) < tau <
///   pi/2: the n_x bracket dominates the n_y bracket and is positive.
/// The brackets are homogeneous in (u, v), so the regime checks are
/// evaluated at u = 1, v = gamma.
inline InequalityReport verify_appendix_inequalities(int total_spins, const std::vector<double>& tau_grid,
                                                     const std::vector<double>& gamma_grid) {
  if (total_spins < 2) throw std::domain_error("verify_appendix_inequalities: need N >= 2");
  const int n1 = total_spins - 1;
  InequalityReport report;
  const double fp_slack = 1e-12;

  auto record = [&](const char* check, double tau, double gamma, double margin) {
    report.worst_margin = std::min(report.worst_margin, margin);
    if (margin < -fp_slack) report.violations.push_back({check, tau, gamma, margin});
  };

  for (double tau : tau_grid) {
    const double rhs = 2.0 * n1 * std::sin(tau) * std::sin(tau);
    const double c2 = std::pow(std::cos(2.0 * tau), n1);
    const double c = std::pow(std::cos(tau), 2 * n1);
    record("B1", tau, 0.0, rhs - (1.0 + c2 - 2.0 * c));
    record("B2", tau, 0.0, rhs - (1.0 - c2));
    ++report.points_checked;
  }

  for (double gamma : gamma_grid) {
    for (double tau : tau_grid) {
      if (!(tau > 0.0 && tau < 0.5 * kPi)) continue;
      const double bx = ht::bracket_x(total_spins, 1.0, gamma, tau);
      const double by = ht::bracket_y(total_spins, 1.0, gamma, tau);
      const bool izsy_region =
          (tau < 0.25 * kPi && 1.0 > n1 * gamma * gamma) ||
          (tau >= 0.25 * kPi && tau < tau_arctan_sqrt2() &&
           1.0 > (4.0 / 3.0) * n1 / (1.0 - std::pow(3.0, -n1)) * gamma * gamma);
      const bool izsx_region =
          total_spins % 2 == 1 && tau > tau_arctan_sqrt2() && 1.0 > 2.0 * n1 * gamma * gamma;
      if (izsy_region) {
        record("C: ny bracket dominates", tau, gamma, by - bx);
        record("C: ny bracket nonnegative", tau, gamma, by);
      }
      if (izsx_region) {
        record("C: nx bracket dominates", tau, gamma, bx - by);
        record("C: nx bracket positive", tau, gamma, bx);
      }
      ++report.points_checked;
    }
  }
  return report;
}

}  // namespace spinring
