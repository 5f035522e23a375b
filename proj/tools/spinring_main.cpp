// Command-line driver: parameter sweeps of quantum vs classical correlations
// in the spin-ring model, regime-map generation, and CSV/JSON output.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "spinring/sweep.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kIo = 3 };

struct CliOptions {
  spinring::SweepSpec sweep;
  spinring::RegionMapSpec region;
  std::string mode = "compare";
  std::string format = "csv";
  std::string output;
  std::string backend = "auto";
  bool with_numeric_check = false;
};

spinring::NumericBackend parse_backend(const std::string& s) {
  if (s == "auto") return spinring::NumericBackend::Auto;
  if (s == "dense") return spinring::NumericBackend::Dense;
  if (s == "collective") return spinring::NumericBackend::Collective;
  throw spinring::UsageError("numeric_backend: expected auto|dense|collective, got '" + s + "'");
}

int run(const CliOptions& opt) {
  using namespace spinring;
  const SweepMode mode = parse_sweep_mode(opt.mode);
  const OutputFormat format = parse_output_format(opt.format);

  if (mode == SweepMode::RegionMap) {
    RegionMapSpec spec = opt.region;
    spec.num_spins = opt.sweep.num_spins.front();
    spec.tau_start = opt.sweep.tau_start;
    spec.tau_end = opt.sweep.tau_end;
    spec.with_numeric_check = opt.with_numeric_check;
    spec.jobs = opt.sweep.jobs;
    spec.backend = parse_backend(opt.backend);
    const RegionMap map = region_map(spec);
    if (opt.output.empty()) {
      format == OutputFormat::Csv ? emit_region_csv(map, std::cout) : emit_region_json(map, std::cout);
    } else {
      emit(map, format, opt.output);
    }
    return kOk;
  }

  SweepSpec spec = opt.sweep;
  spec.mode = mode;
  spec.backend = parse_backend(opt.backend);
  const std::vector<SweepRow> rows = run_sweep_collect(spec);
  if (opt.output.empty()) {
    format == OutputFormat::Csv ? emit_csv(rows, std::cout) : emit_json(rows, std::cout);
  } else {
    emit(rows, format, opt.output);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions opt;
  CLI::App app{"Quantum discord, classical correlations and mutual information for a "
               "heteronuclear spin ring with a central spin"};
  app.set_config("--config", "", "Read options from a key=value file");

  app.add_option("--num-spins", opt.sweep.num_spins, "Total spin counts N (ring size N-1), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--beta", opt.sweep.beta, "Inverse temperature")->capture_default_str();
  app.add_option("--omega-a", opt.sweep.omega_a, "Larmor frequency of the ring spins")->capture_default_str();
  app.add_option("--omega-b", opt.sweep.omega_b, "Larmor frequency of the central spin")->capture_default_str();
  app.add_option("--coupling-g", opt.sweep.g, "Ring-center zz coupling constant")->capture_default_str();
  app.add_option("--tau-start", opt.sweep.tau_start, "First dimensionless time")->capture_default_str();
  app.add_option("--tau-end", opt.sweep.tau_end, "Last dimensionless time")->capture_default_str();
  app.add_option("--tau-steps", opt.sweep.tau_steps, "Number of tau grid points (>= 2)")->capture_default_str();
  app.add_option("--gamma", opt.sweep.gamma, "Frequency ratios omega_A/omega_B; overrides --omega-a per point")
      ->delimiter(',');
  app.add_option("--mode", opt.mode, "numeric | analytic | compare | region-map")->capture_default_str();
  app.add_option("--format", opt.format, "csv | json")->capture_default_str();
  app.add_option("--output", opt.output, "Output path (stdout when omitted)");
  app.add_flag("--unchecked", opt.sweep.unchecked, "Skip the high-temperature validity check");
  app.add_flag("--with-dipolar", opt.sweep.with_dipolar, "Evolve with the secular dipolar coupling in the ring");
  app.add_option("--dipolar-d0", opt.sweep.dipolar_d0, "Dipolar coupling scale d0")->capture_default_str();
  app.add_option("--seed", opt.sweep.seed, "Seed for randomized batteries")->capture_default_str();
  app.add_option("--jobs", opt.sweep.jobs, "Worker threads for grid evaluation")->capture_default_str();
  app.add_option("--numeric-backend", opt.backend, "auto | dense | collective")->capture_default_str();
  app.add_option("--gamma-start", opt.region.gamma_start, "Region map: first gamma")->capture_default_str();
  app.add_option("--gamma-end", opt.region.gamma_end, "Region map: last gamma")->capture_default_str();
  app.add_option("--map-resolution", opt.region.resolution, "Region map: cells per axis")->capture_default_str();
  app.add_option("--map-u", opt.region.u, "Region map: expansion parameter u")->capture_default_str();
  app.add_flag("--with-numeric-check", opt.with_numeric_check,
               "Region map: add the numeric argmin dominant axis per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run(opt);
  } catch (const spinring::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const spinring::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const spinring::StateError& e) {
    std::cerr << "numeric validity error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
}
