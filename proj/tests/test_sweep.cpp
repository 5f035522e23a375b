#include <catch2/catch.hpp>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "spinring/sweep.hpp"

using namespace spinring;

namespace {

SweepSpec analytic_spec() {
  SweepSpec spec;
  spec.num_spins = {3};
  spec.beta = 1.0;
  spec.omega_b = 0.03;
  spec.gamma = {2.0};
  spec.tau_start = 0.0;
  spec.tau_end = 0.5 * kPi;
  spec.tau_steps = 3;
  spec.mode = SweepMode::Analytic;
  return spec;
}

}  // namespace

TEST_CASE("analytic sweep reproduces the ring-dominant discord column") {
  const std::vector<SweepRow> rows = run_sweep_collect(analytic_spec());
  REQUIRE(rows.size() == 3);
  const double u = 0.03;
  CHECK(rows[0].tau == Approx(0.0));
  REQUIRE(rows[0].d_ht.has_value());
  CHECK(*rows[0].d_ht == Approx(0.0).margin(1e-18));
  const double quarter = u * u * (1.0 - std::pow(std::cos(kPi / 4), 4)) / (8.0 * kLn2);
  CHECK(*rows[1].d_ht == Approx(quarter).epsilon(1e-12));
  CHECK(*rows[2].d_ht == Approx(u * u / (8.0 * kLn2)).epsilon(1e-12));
  for (const SweepRow& r : rows) {
    CHECK(r.regime == RegimeTag::IySz);
    CHECK_FALSE(r.d_numeric.has_value());
  }
}

TEST_CASE("compare mode fills the deviation columns") {
  SweepSpec spec = analytic_spec();
  spec.mode = SweepMode::Compare;
  spec.tau_steps = 4;
  const std::vector<SweepRow> rows = run_sweep_collect(spec);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& r : rows) {
    CHECK(r.regime != RegimeTag::Unclassified);
    REQUIRE(r.d_numeric.has_value());
    REQUIRE(r.d_ht.has_value());
    REQUIRE(r.rel_dev.has_value());
    CHECK(std::isfinite(*r.rel_dev));
    REQUIRE(r.n_opt.has_value());
  }
  // Grid order is lexicographic in tau.
  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].tau > rows[i - 1].tau);
}

TEST_CASE("analytic discord curves rise monotonically to tau = pi/2") {
  for (int n : {3, 7, 11}) {
    SweepSpec spec = analytic_spec();
    spec.num_spins = {n};
    spec.tau_steps = 25;
    const std::vector<SweepRow> rows = run_sweep_collect(spec);
    REQUIRE(rows.size() == 25);
    CHECK(*rows.front().d_ht == Approx(0.0).margin(1e-18));
    for (size_t i = 1; i < rows.size(); ++i) CHECK(*rows[i].d_ht >= *rows[i - 1].d_ht - 1e-18);
  }
}

TEST_CASE("sweep validation names the violated field") {
  SweepSpec spec = analytic_spec();
  spec.tau_steps = 1;
  CHECK_THROWS_WITH(spec.validate(), Catch::Contains("tau_steps"));

  SweepSpec spec2 = analytic_spec();
  spec2.num_spins = {};
  CHECK_THROWS_WITH(spec2.validate(), Catch::Contains("num_spins"));

  SweepSpec spec3 = analytic_spec();
  spec3.beta = 40.0;  // HT-invalid
  CHECK_THROWS_WITH(spec3.validate(), Catch::Contains("beta"));
  spec3.unchecked = true;
  CHECK_NOTHROW(spec3.validate());

  SweepSpec spec4 = analytic_spec();
  spec4.jobs = 0;
  CHECK_THROWS_WITH(spec4.validate(), Catch::Contains("jobs"));
}

TEST_CASE("csv emission") {
  std::vector<SweepRow> rows;
  std::ostringstream empty;
  emit_csv(rows, empty);
  CHECK(empty.str() == std::string(kSweepCsvHeader) + "\n");

  rows = run_sweep_collect(analytic_spec());
  std::ostringstream os;
  emit_csv(rows, os);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.substr(0, text.find('\n')) == kSweepCsvHeader);
}

TEST_CASE("json emission round-trips bit-exactly") {
  SweepSpec spec = analytic_spec();
  spec.mode = SweepMode::Compare;
  const std::vector<SweepRow> rows = run_sweep_collect(spec);
  std::ostringstream os;
  emit_json(rows, os);
  const nlohmann::json parsed = nlohmann::json::parse(os.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& obj = parsed[i];
    CHECK(obj.at("N").get<int>() == rows[i].num_spins);
    CHECK(obj.at("gamma").get<double>() == rows[i].gamma);
    CHECK(obj.at("tau").get<double>() == rows[i].tau);
    CHECK(obj.at("D_numeric").get<double>() == *rows[i].d_numeric);
    CHECK(obj.at("D_ht").get<double>() == *rows[i].d_ht);
    CHECK(obj.at("rel_dev").get<double>() == *rows[i].rel_dev);
    CHECK(obj.at("regime").get<std::string>() == regime_name(rows[i].regime));
    CHECK(obj.at("n_opt_x").get<double>() == rows[i].n_opt->x);
  }
  // Analytic-only rows carry nulls in the numeric columns.
  std::ostringstream os2;
  emit_json(run_sweep_collect(analytic_spec()), os2);
  const nlohmann::json parsed2 = nlohmann::json::parse(os2.str());
  CHECK(parsed2[0].at("D_numeric").is_null());
}

TEST_CASE("parallel evaluation is deterministic") {
  SweepSpec spec = analytic_spec();
  spec.mode = SweepMode::Compare;
  spec.num_spins = {2, 3};
  spec.tau_steps = 5;
  spec.jobs = 1;
  std::ostringstream a, b;
  emit_csv(run_sweep_collect(spec), a);
  spec.jobs = 4;
  emit_csv(run_sweep_collect(spec), b);
  CHECK(a.str() == b.str());
}

TEST_CASE("region map tags and boundaries") {
  RegionMapSpec spec;
  spec.num_spins = 5;
  spec.resolution = 24;
  spec.gamma_start = 0.1;
  spec.gamma_end = 3.0;
  const RegionMap map = region_map(spec);

  SECTION("boundary metadata") {
    double izsy_small = 0, izsy_mid = 0, izsx = 0, arct = 0;
    for (const auto& [name, value] : map.boundaries) {
      if (name == "gamma_izsy_small_tau") izsy_small = value;
      if (name == "gamma_izsy_mid_tau") izsy_mid = value;
      if (name == "gamma_izsx") izsx = value;
      if (name == "tau_arctan_sqrt2") arct = value;
    }
    CHECK(izsy_small == Approx(0.5));
    CHECK(izsy_mid == Approx(std::sqrt(3.0 * (1 - std::pow(3.0, -4)) / 16.0)));
    CHECK(izsx == Approx(1.0 / std::sqrt(8.0)));
    CHECK(arct == Approx(std::atan(std::sqrt(2.0))));
  }
  SECTION("cells follow the analytic conditions") {
    for (const RegionCell& cell : map.cells) {
      if (cell.gamma > 1.0 + 1e-9) CHECK(cell.regime == RegimeTag::IySz);
      if (cell.gamma < 0.3 && cell.tau > std::atan(std::sqrt(2.0)) + 0.05)
        CHECK(cell.regime == RegimeTag::IzSx);
      if (cell.gamma < 0.3 && cell.tau < 0.25 * kPi - 0.05) CHECK(cell.regime == RegimeTag::IzSy);
      if (cell.gamma > 0.55 && cell.gamma < 0.95) {
        CHECK(cell.regime == RegimeTag::Unclassified);
      }
    }
  }
  SECTION("csv and json emission") {
    std::ostringstream os;
    emit_region_csv(map, os);
    CHECK(os.str().find("# boundary gamma_iysz=1") != std::string::npos);
    std::ostringstream js;
    emit_region_json(map, js);
    const nlohmann::json parsed = nlohmann::json::parse(js.str());
    CHECK(parsed.at("N").get<int>() == 5);
    CHECK(parsed.at("cells").size() == map.cells.size());
  }
}

TEST_CASE("region map numeric check marks matches") {
  RegionMapSpec spec;
  spec.num_spins = 5;
  spec.resolution = 6;
  spec.gamma_start = 0.15;
  spec.gamma_end = 2.8;
  spec.with_numeric_check = true;
  spec.jobs = 2;
  const RegionMap map = region_map(spec);
  int classified = 0;
  for (const RegionCell& cell : map.cells) {
    REQUIRE(cell.numeric_axis.has_value());
    if (cell.regime == RegimeTag::Unclassified) continue;
    if (!cell.interior) continue;
    ++classified;
    REQUIRE(cell.match.has_value());
    CHECK(*cell.match);
  }
  CHECK(classified > 0);
}

TEST_CASE("file emission failures raise IoError") {
  const std::vector<SweepRow> rows;
  CHECK_THROWS_AS(emit(rows, OutputFormat::Csv, "/nonexistent-dir/out.csv"), IoError);
}
