#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spinring/analytic.hpp"
#include "spinring/correlations.hpp"

namespace spinring {

enum class SweepMode { Numeric, Analytic, Compare, RegionMap };
enum class OutputFormat { Csv, Json };

inline SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "numeric") return SweepMode::Numeric;
  if (s == "analytic") return SweepMode::Analytic;
  if (s == "compare") return SweepMode::Compare;
  if (s == "region-map") return SweepMode::RegionMap;
  throw UsageError("mode: expected one of numeric|analytic|compare|region-map, got '" + s + "'");
}

inline OutputFormat parse_output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw UsageError("format: expected csv or json, got '" + s + "'");
}

struct SweepSpec {
  std::vector<int> num_spins = {3};
  double beta = 1.0;
  double omega_a = 0.1;
  double omega_b = 0.05;
  double g = 1.0;
  double tau_start = 0.0;
  double tau_end = 0.5 * kPi;
  int tau_steps = 33;
  std::vector<double> gamma;  // when nonempty, omega_a = gamma * omega_b per point
  SweepMode mode = SweepMode::Compare;
  bool unchecked = false;
  bool with_dipolar = false;
  double dipolar_d0 = 1.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  NumericBackend backend = NumericBackend::Auto;
  MinimizeOptions minimize;

  void validate() const {
    if (num_spins.empty()) throw UsageError("num_spins: list must not be empty");
    for (int n : num_spins)
      if (n < 2 || n > kMaxTotalSpins)
        throw UsageError("num_spins: each value must be in [2, " + std::to_string(kMaxTotalSpins) + "]");
    if (!(beta > 0)) throw UsageError("beta: must be positive");
    if (!(omega_b > 0)) throw UsageError("omega_b: must be positive");
    if (gamma.empty() && !(omega_a > 0)) throw UsageError("omega_a: must be positive");
    for (double gm : gamma)
      if (!(gm > 0)) throw UsageError("gamma: values must be positive");
    if (g == 0) throw UsageError("coupling_g: must be nonzero");
    if (tau_steps < 2) throw UsageError("tau_steps: must be at least 2");
    if (jobs < 1) throw UsageError("jobs: must be at least 1");
    if (!unchecked) {
      for (int n : num_spins) {
        const std::vector<double> gammas = gamma.empty() ? std::vector<double>{omega_a / omega_b} : gamma;
        for (double gm : gammas) {
          const double wa = gamma.empty() ? omega_a : gm * omega_b;
          if (!((n - 1) * beta * wa < 1.0 && (n - 1) * beta * omega_b < 1.0))
            throw UsageError("beta: config (N=" + std::to_string(n) +
                             ", gamma=" + std::to_string(gm) +
                             ") violates high-temperature validity (N-1)*beta*omega < 1; "
                             "pass --unchecked to override");
        }
      }
    }
  }
};

struct SweepRow {
  int num_spins = 0;
  double gamma = 0.0;
  double tau = 0.0;
  std::optional<double> d_numeric, c_numeric, i_numeric;
  std::optional<double> d_ht, c_ht;
  RegimeTag regime = RegimeTag::Unclassified;
  std::optional<MeasurementDirection> n_opt;
  std::optional<double> abs_dev, rel_dev;
};

namespace detail {

// Classification window edges are open; grid endpoints at exactly 0 or pi/2
// are classified by continuity from just inside the window.
inline std::optional<double> classification_tau(double tau) {
  const double hi = 0.5 * kPi;
  if (tau < -1e-12 || tau > hi + 1e-12) return std::nullopt;
  const double eps = 1e-9;
  return std::min(std::max(tau, eps), hi - eps);
}

struct AnalyticPoint {
  RegimeTag tag = RegimeTag::Unclassified;
  std::optional<double> discord, classical;
};

inline AnalyticPoint analytic_point(const SystemConfig& config, double tau) {
  AnalyticPoint out;
  const std::optional<double> tau_cl = classification_tau(tau);
  if (!tau_cl) return out;
  out.tag = classify_regime_uv(config.total_spins(), config.u(), config.v(), *tau_cl).tag;
  if (out.tag == RegimeTag::Unclassified) return out;
  const HtParameters p = HtParameters::from_config(config);
  switch (out.tag) {
    case RegimeTag::IySz:
      out.discord = ht::discord_iysz(p.total_spins, p.u, tau);
      out.classical = ht::classical_iysz(p.total_spins, p.v, tau);
      break;
    case RegimeTag::IzSy:
      out.discord = ht::discord_izsy(p.total_spins, p.u, p.v, tau);
      out.classical = ht::classical_izsy(p.total_spins, p.u, tau);
      break;
    case RegimeTag::IzSx:
      out.discord = ht::discord_izsx(p.total_spins, p.u, p.v, tau);
      out.classical = ht::classical_izsx(p.total_spins, p.u, tau);
      break;
    default: break;
  }
  return out;
}

}  // namespace detail

/// Evaluate the sweep grid. Rows are produced in lexicographic
/// (N, gamma, tau) order regardless of how many worker threads evaluate
/// them; output is deterministic for a fixed spec.
inline void run_sweep(const SweepSpec& spec, const std::function<void(const SweepRow&)>& sink) {
  spec.validate();
  if (spec.mode == SweepMode::RegionMap)
    throw UsageError("mode: region-map specs are handled by region_map(), not run_sweep()");

  struct Point {
    int n;
    double gamma, tau;
  };
  std::vector<Point> grid;
  const std::vector<double> gammas = spec.gamma.empty() ? std::vector<double>{spec.omega_a / spec.omega_b} : spec.gamma;
  for (int n : spec.num_spins)
    for (double gm : gammas)
      for (int i = 0; i < spec.tau_steps; ++i) {
        const double tau = spec.tau_start + (spec.tau_end - spec.tau_start) * i / (spec.tau_steps - 1);
        grid.push_back({n, gm, tau});
      }

  auto eval_point = [&](const Point& pt) {
    const double wa = pt.gamma * spec.omega_b;
    const SystemConfig config = spec.unchecked
                                    ? SystemConfig::unchecked(pt.n, spec.beta, wa, spec.omega_b, spec.g)
                                    : SystemConfig::checked(pt.n, spec.beta, wa, spec.omega_b, spec.g);
    SweepRow row;
    row.num_spins = pt.n;
    row.gamma = pt.gamma;
    row.tau = pt.tau;
    {
      // The regime tag is cheap metadata; emit it in every mode.
      const std::optional<double> tau_cl = detail::classification_tau(pt.tau);
      if (tau_cl)
        row.regime = classify_regime_uv(config.total_spins(), config.u(), config.v(), *tau_cl).tag;
    }
    if (spec.mode == SweepMode::Analytic || spec.mode == SweepMode::Compare) {
      const detail::AnalyticPoint a = detail::analytic_point(config, pt.tau);
      row.d_ht = a.discord;
      row.c_ht = a.classical;
    }
    if (spec.mode == SweepMode::Numeric || spec.mode == SweepMode::Compare) {
      NumericOptions opt;
      opt.backend = spec.backend;
      opt.minimize = spec.minimize;
      if (spec.with_dipolar) {
        opt.include_dipolar = true;
        opt.geometry = RingGeometry::regular(pt.n - 1, 1.0, spec.dipolar_d0);
      }
      const CorrelationReport rep = numeric_correlations(config, pt.tau, opt);
      row.d_numeric = rep.discord;
      row.c_numeric = rep.classical;
      row.i_numeric = rep.mutual_information;
      row.n_opt = rep.optimal_direction;
    }
    if (row.d_numeric && row.d_ht) {
      row.abs_dev = std::abs(*row.d_numeric - *row.d_ht);
      row.rel_dev = *row.abs_dev / std::max(*row.d_ht, 1e-30);
    }
    return row;
  };

  std::vector<SweepRow> rows(grid.size());
  const int jobs = std::min<int>(spec.jobs, int(grid.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < grid.size(); ++i) rows[i] = eval_point(grid[i]);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= grid.size()) return;
        try {
          rows[i] = eval_point(grid[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  for (const SweepRow& row : rows) sink(row);
}

inline std::vector<SweepRow> run_sweep_collect(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  run_sweep(spec, [&](const SweepRow& r) { rows.push_back(r); });
  return rows;
}

// ---------------------------------------------------------------------------
// Region map
// ---------------------------------------------------------------------------

struct RegionMapSpec {
  int num_spins = 5;
  double gamma_start = 0.1, gamma_end = 3.0;
  double tau_start = 0.0, tau_end = 0.5 * kPi;
  int resolution = 40;
  bool with_numeric_check = false;
  double u = 0.05;  // beta*omega_b chosen so (N-1) beta omega_b / 2 = u
  int jobs = 1;
  NumericBackend backend = NumericBackend::Auto;
  MinimizeOptions minimize;

  void validate() const {
    if (num_spins < 3 || num_spins > kMaxTotalSpins) throw UsageError("num_spins: region map needs N in [3, 14]");
    if (resolution < 2) throw UsageError("map_resolution: must be at least 2");
    if (!(gamma_start > 0) || !(gamma_end > gamma_start)) throw UsageError("gamma: invalid range");
    if (!(tau_start >= 0) || !(tau_end > tau_start) || tau_end > 0.5 * kPi + 1e-12)
      throw UsageError("tau: region map range must lie in [0, pi/2]");
    if (!(u > 0) || !(u < 1)) throw UsageError("u: must be in (0, 1)");
  }
};

struct RegionCell {
  double gamma = 0.0, tau = 0.0;
  RegimeTag regime = RegimeTag::Unclassified;
  bool near_boundary = false;
  bool interior = false;  // at least one cell-width away from every boundary curve
  std::optional<char> numeric_axis;
  std::optional<bool> match;
};

struct RegionMap {
  int num_spins = 0;
  double u = 0.0;
  std::vector<std::pair<std::string, double>> boundaries;
  std::vector<RegionCell> cells;
};

/// Tags every cell of a (gamma, tau) grid with the closed-form regime and,
/// optionally, the dominant axis of the numerically optimal measurement
/// direction. Cell centers are used; `interior` marks cells at least one
/// cell-width from every analytic boundary curve.
inline RegionMap region_map(const RegionMapSpec& spec) {
  spec.validate();
  const int n = spec.num_spins;
  RegionMap map;
  map.num_spins = n;
  map.u = spec.u;
  map.boundaries = {
      {"gamma_iysz", gamma_boundary_iysz()},
      {"gamma_izsy_small_tau", gamma_boundary_izsy_small_tau(n)},
      {"gamma_izsy_mid_tau", gamma_boundary_izsy_mid_tau(n)},
      {"gamma_izsx", gamma_boundary_izsx(n)},
      {"tau_quarter_pi", 0.25 * kPi},
      {"tau_arctan_sqrt2", tau_arctan_sqrt2()},
  };

  const double d_gamma = (spec.gamma_end - spec.gamma_start) / spec.resolution;
  const double d_tau = (spec.tau_end - spec.tau_start) / spec.resolution;
  const double beta = 1.0;
  const double omega_b = 2.0 * spec.u / (n - 1);

  map.cells.resize(size_t(spec.resolution) * size_t(spec.resolution));
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const size_t idx = next.fetch_add(1);
      if (idx >= map.cells.size()) return;
      try {
        const int i = int(idx) / spec.resolution;
        const int j = int(idx) % spec.resolution;
        RegionCell cell;
        cell.gamma = spec.gamma_start + (i + 0.5) * d_gamma;
        cell.tau = spec.tau_start + (j + 0.5) * d_tau;
        const SystemConfig config =
            SystemConfig::checked(n, beta, cell.gamma * omega_b, omega_b, 1.0);
        const RegimeClassification cls = classify_regime_detailed(config, cell.tau);
        cell.regime = cls.tag;
        cell.near_boundary = cls.near_boundary;
        bool interior = true;
        for (const auto& [name, value] : map.boundaries) {
          const bool is_gamma = name.rfind("gamma", 0) == 0;
          const double dist = is_gamma ? std::abs(cell.gamma - value) : std::abs(cell.tau - value);
          if (dist < (is_gamma ? d_gamma : d_tau)) interior = false;
        }
        cell.interior = interior;
        if (spec.with_numeric_check) {
          NumericOptions opt;
          opt.backend = spec.backend;
          opt.minimize = spec.minimize;
          const CorrelationReport rep = numeric_correlations(config, cell.tau, opt);
          const MeasurementDirection& d = rep.optimal_direction;
          const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
          cell.numeric_axis = (ax >= ay && ax >= az) ? 'x' : (ay >= az ? 'y' : 'z');
          if (cell.regime != RegimeTag::Unclassified)
            cell.match = (*cell.numeric_axis == regime_axis(cell.regime));
        }
        map.cells[idx] = cell;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::max(1, spec.jobs);
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return map;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

inline std::string json_opt(const std::optional<double>& v) { return v ? format_double(*v) : "null"; }

}  // namespace detail

inline constexpr const char* kSweepCsvHeader =
    "N,gamma,tau,D_numeric,C_numeric,I_numeric,D_ht,C_ht,regime,n_opt_x,n_opt_y,n_opt_z,abs_dev,rel_dev";

inline void emit_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    os << r.num_spins << ',' << detail::format_double(r.gamma) << ',' << detail::format_double(r.tau)
       << ',' << detail::csv_opt(r.d_numeric) << ',' << detail::csv_opt(r.c_numeric) << ','
       << detail::csv_opt(r.i_numeric) << ',' << detail::csv_opt(r.d_ht) << ','
       << detail::csv_opt(r.c_ht) << ',' << regime_name(r.regime) << ','
       << (r.n_opt ? detail::format_double(r.n_opt->x) : "") << ','
       << (r.n_opt ? detail::format_double(r.n_opt->y) : "") << ','
       << (r.n_opt ? detail::format_double(r.n_opt->z) : "") << ','
       << detail::csv_opt(r.abs_dev) << ',' << detail::csv_opt(r.rel_dev) << '\n';
  }
}

inline void emit_json(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "[\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    os << "  {\"N\": " << r.num_spins << ", \"gamma\": " << detail::format_double(r.gamma)
       << ", \"tau\": " << detail::format_double(r.tau)
       << ", \"D_numeric\": " << detail::json_opt(r.d_numeric)
       << ", \"C_numeric\": " << detail::json_opt(r.c_numeric)
       << ", \"I_numeric\": " << detail::json_opt(r.i_numeric)
       << ", \"D_ht\": " << detail::json_opt(r.d_ht) << ", \"C_ht\": " << detail::json_opt(r.c_ht)
       << ", \"regime\": \"" << regime_name(r.regime) << '"'
       << ", \"n_opt_x\": " << (r.n_opt ? detail::format_double(r.n_opt->x) : "null")
       << ", \"n_opt_y\": " << (r.n_opt ? detail::format_double(r.n_opt->y) : "null")
       << ", \"n_opt_z\": " << (r.n_opt ? detail::format_double(r.n_opt->z) : "null")
       << ", \"abs_dev\": " << detail::json_opt(r.abs_dev)
       << ", \"rel_dev\": " << detail::json_opt(r.rel_dev) << '}' << (i + 1 < rows.size() ? "," : "")
       << '\n';
  }
  os << "]\n";
}

inline void emit_region_csv(const RegionMap& map, std::ostream& os) {
  for (const auto& [name, value] : map.boundaries)
    os << "# boundary " << name << '=' << detail::format_double(value) << '\n';
  os << "N,gamma,tau,regime,near_boundary,interior,numeric_axis,match\n";
  for (const RegionCell& c : map.cells) {
    os << map.num_spins << ',' << detail::format_double(c.gamma) << ',' << detail::format_double(c.tau)
       << ',' << regime_name(c.regime) << ',' << (c.near_boundary ? 1 : 0) << ',' << (c.interior ? 1 : 0)
       << ',' << (c.numeric_axis ? std::string(1, *c.numeric_axis) : "") << ','
       << (c.match ? (*c.match ? "1" : "0") : "") << '\n';
  }
}

inline void emit_region_json(const RegionMap& map, std::ostream& os) {
  os << "{\n  \"N\": " << map.num_spins << ",\n  \"u\": " << detail::format_double(map.u)
     << ",\n  \"boundaries\": {";
  for (size_t i = 0; i < map.boundaries.size(); ++i)
    os << (i ? ", " : "") << '"' << map.boundaries[i].first
       << "\": " << detail::format_double(map.boundaries[i].second);
  os << "},\n  \"cells\": [\n";
  for (size_t i = 0; i < map.cells.size(); ++i) {
    const RegionCell& c = map.cells[i];
    os << "    {\"gamma\": " << detail::format_double(c.gamma)
       << ", \"tau\": " << detail::format_double(c.tau) << ", \"regime\": \"" << regime_name(c.regime)
       << "\", \"near_boundary\": " << (c.near_boundary ? "true" : "false")
       << ", \"interior\": " << (c.interior ? "true" : "false") << ", \"numeric_axis\": "
       << (c.numeric_axis ? "\"" + std::string(1, *c.numeric_axis) + "\"" : "null")
       << ", \"match\": " << (c.match ? (*c.match ? "true" : "false") : "null") << '}'
       << (i + 1 < map.cells.size() ? "," : "") << '\n';
  }
  os << "  ]\n}\n";
}

/// Write rows to a file, throwing IoError when the path cannot be written.
template <typename EmitFn, typename Data>
inline void emit_to_path(const Data& data, const std::string& path, EmitFn emit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output path: " + path);
  emit(data, out);
  out.flush();
  if (!out) throw IoError("failed while writing: " + path);
}

inline void emit(const std::vector<SweepRow>& rows, OutputFormat format, const std::string& path) {
  if (format == OutputFormat::Csv)
    emit_to_path(rows, path, [](const std::vector<SweepRow>& r, std::ostream& os) { emit_csv(r, os); });
  else
    emit_to_path(rows, path, [](const std::vector<SweepRow>& r, std::ostream& os) { emit_json(r, os); });
}

inline void emit(const RegionMap& map, OutputFormat format, const std::string& path) {
  if (format == OutputFormat::Csv)
    emit_to_path(map, path, [](const RegionMap& m, std::ostream& os) { emit_region_csv(m, os); });
  else
    emit_to_path(map, path, [](const RegionMap& m, std::ostream& os) { emit_region_json(m, os); });
}

}  // namespace spinring
