#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "mopo/dispersion.hpp"
#include "mopo/errors.hpp"

using namespace mopo;

namespace {

// Independent reference values (arbitrary-precision evaluation of the same
// index law, symbolic derivatives).
constexpr double kIndexSignal = 2.1382982391253633;
constexpr double kIndexPump = 2.1792244405777175;
constexpr double kTauGvs = 7.2814939651276614e-11;
constexpr double kTauGvd = 2.2449089168866997e-14;
constexpr double kPeriodCounter = 3.5379559151585419e-7;
constexpr double kPeriodCo = 1.8838787198406084e-5;

MaterialDispersion ppln() { return find_material("ppln-congruent-e"); }

InteractionConfig slab(Geometry g, double length = 0.01) {
  return InteractionConfig::from_pump_signal(771e-9, 1542e-9, length, g);
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST_CASE("PPLN index against reference evaluation") {
  const auto m = ppln();
  CHECK(rel(m.index(1542e-9), kIndexSignal) < 1e-12);
  CHECK(rel(m.index(771e-9), kIndexPump) < 1e-12);
}

TEST_CASE("PPLN timescales against reference derivatives") {
  const auto media = Media::uniform(ppln());
  const auto ts = timescales(slab(Geometry::counter), media);
  CHECK(rel(ts.tau_gvs, kTauGvs) < 1e-9);
  CHECK(rel(ts.tau_gvd, kTauGvd) < 1e-6);
  CHECK(std::abs(ts.tau_gvm) < 1e-18);
  CHECK(rel(ts.omega_gvs, 1.0 / kTauGvs) < 1e-9);
  CHECK(std::isinf(ts.omega_gvm));
}

TEST_CASE("PPLN poling periods against reference") {
  const auto media = Media::uniform(ppln());
  CHECK(rel(qpm_poling_period(slab(Geometry::counter), media), kPeriodCounter) < 1e-9);
  CHECK(rel(qpm_poling_period(slab(Geometry::co), media), kPeriodCo) < 1e-9);
}

TEST_CASE("constant index: k linear in omega, no curvature") {
  const auto m = constant_material(2.0);
  const double w = 2.0 * std::numbers::pi * kSpeedOfLight / 1e-6;
  CHECK(rel(wavenumber(m, w), 2.0 * w / kSpeedOfLight) < 1e-14);
  const auto d = group_derivatives(m, w);
  CHECK(rel(d.k1, 2.0 / kSpeedOfLight) < 1e-9);
  CHECK(std::abs(d.k2) * w < 1e-9 * d.k1);
}

TEST_CASE("quadratic-in-omega index: analytic group derivatives") {
  const double w = 2.0 * std::numbers::pi * kSpeedOfLight / 1.5e-6;
  const double b = 0.1 / (w * w);
  MaterialDispersion m{"quad", IndexForm::quadratic_omega, {2.0, b}, 400e-9, 3000e-9};
  const auto d = group_derivatives(m, w);
  CHECK(rel(d.k1, (2.0 + 3.0 * b * w * w) / kSpeedOfLight) < 1e-9);
  CHECK(rel(d.k2, 6.0 * b * w / kSpeedOfLight) < 1e-6);
}

TEST_CASE("out-of-range wavelength") {
  const auto m = ppln();
  CHECK_THROWS_AS((void)m.index(300e-9), OutOfRange);
  CHECK_THROWS_AS((void)m.index(3.5e-6), OutOfRange);
  // Pump outside the table: the grating needs it, the timescales do not.
  const auto uv = InteractionConfig::from_pump_signal(350e-9, 700e-9, 0.01, Geometry::counter);
  CHECK_THROWS_AS(qpm_poling_period(uv, Media::uniform(m)), OutOfRange);
  CHECK_NOTHROW(timescales(uv, Media::uniform(m)));
  const auto ir = InteractionConfig::from_pump_signal(1600e-9, 3200e-9, 0.01, Geometry::counter);
  CHECK_THROWS_AS(timescales(ir, Media::uniform(m)), OutOfRange);
}

TEST_CASE("dispersionless counter-propagating grating is lambda_p / n") {
  const auto media = Media::uniform(constant_material(2.0));
  CHECK(rel(qpm_poling_period(slab(Geometry::counter), media), 771e-9 / 2.0) < 1e-12);
  auto third = slab(Geometry::counter);
  third.poling_order = 3;
  CHECK(rel(qpm_poling_period(third, media), 3.0 * 771e-9 / 2.0) < 1e-12);
}

TEST_CASE("solved grating zeroes the reference mismatch") {
  const auto media = Media::uniform(ppln());
  for (auto g : {Geometry::counter, Geometry::co}) {
    auto c = slab(g);
    c.poling_period = qpm_poling_period(c, media);
    const auto p = PhaseMismatch::exact(c, media);
    CHECK(std::abs(p.residual() * c.crystal_length) < 1e-6);
    CHECK(std::abs(p(0.0).half_mismatch) < 1e-6);
  }
}

TEST_CASE("timescales scale with crystal length") {
  const auto media = Media::uniform(ppln());
  const auto full = timescales(slab(Geometry::counter, 0.01), media);
  const auto half = timescales(slab(Geometry::counter, 0.005), media);
  CHECK(rel(half.tau_gvs, 0.5 * full.tau_gvs) < 1e-12);
  CHECK(rel(half.tau_gvd, full.tau_gvd / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("linearized counter mismatch: D l / 2 = W / W_gvs") {
  const auto media = Media::uniform(ppln());
  auto c = slab(Geometry::counter);
  c.poling_period = qpm_poling_period(c, media);
  const auto p = PhaseMismatch::linearized(c, media);
  const double w = p.scales().omega_gvs;
  CHECK(std::abs(p(w).half_mismatch - 1.0) < 1e-9);
  CHECK(std::abs(p(-2.5 * w).half_mismatch + 2.5) < 1e-9);
  CHECK(std::abs(p(0.0).half_mismatch) < 1e-9);
}

TEST_CASE("exact and linearized counter mismatch agree within 1% to 10 W_gvs") {
  const auto media = Media::uniform(ppln());
  auto c = slab(Geometry::counter);
  c.poling_period = qpm_poling_period(c, media);
  const auto exact = PhaseMismatch::exact(c, media);
  const auto lin = PhaseMismatch::linearized(c, media);
  const double w = exact.scales().omega_gvs;
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    for (double s : {-1.0, 1.0}) {
      const double om = s * 0.1 * k * w;
      worst = std::max(worst, std::abs(exact(om).half_mismatch / lin(om).half_mismatch - 1.0));
    }
  }
  CHECK(worst < 0.01);
}

TEST_CASE("timescale-only linearized model") {
  const auto ts = Timescales::from_taus(2e-11, 0.0, 1e-14);
  const auto p = PhaseMismatch::linearized(Geometry::counter, ts, 0.01);
  CHECK(p(3.0 / 2e-11).half_mismatch == doctest::Approx(3.0));
  const auto co = PhaseMismatch::linearized(Geometry::co, ts, 0.01);
  // Co-propagating mismatch is quadratic: (W / W_gvd)^2 at equal group velocities.
  CHECK(co(2.0 / 1e-14).half_mismatch == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_THROWS_AS(PhaseMismatch::linearized(Geometry::counter, ts, 0.0), ConfigError);
}

TEST_CASE("material file parsing") {
  const auto m = parse_material(
      "format_version = 1\nname = test\nform_id = sellmeier\n"
      "coefficients = 1, 1.5, 0.01\nvalid_range_nm = 500, 2000\n");
  CHECK(m.name == "test");
  CHECK(m.index(1e-6) == doctest::Approx(std::sqrt(1.0 + 1.5 / (1.0 - 0.01))));

  CHECK_THROWS_AS(parse_material("format_version = 2\nname = x\nform_id = constant\n"
                                 "coefficients = 2\nvalid_range_nm = 500, 2000\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_material("format_version = 1\nname = x\nform_id = bogus\n"
                                 "coefficients = 2\nvalid_range_nm = 500, 2000\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_material("format_version = 1\nname = x\nform_id = sellmeier-ir\n"
                                 "coefficients = 2, 1\nvalid_range_nm = 500, 2000\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_material("format_version = 1\nname = x\nform_id = constant\n"
                                 "coefficients = 2\nvalid_range_nm = 2000, 500\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_material("format_version = 1\nname = x\nform_id = constant\n"
                                 "coefficients = 2\nvalid_range_nm = 500, 2000\ncolour = red\n"),
                  ConfigError);
}

TEST_CASE("material lookup through MOPO_MATERIAL_PATH") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "mopo_test_materials";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "glass.mat");
    out << "format_version = 1\nname = glass\nform_id = constant\ncoefficients = 1.5\n"
           "valid_range_nm = 300, 3000\n";
  }
  CHECK_THROWS_AS(find_material("glass"), ConfigError);
  ::setenv("MOPO_MATERIAL_PATH", ("/nonexistent:" + dir.string()).c_str(), 1);
  CHECK(find_material("glass").index(1e-6) == 1.5);
  ::unsetenv("MOPO_MATERIAL_PATH");
  CHECK(find_material((dir / "glass.mat").string()).name == "glass");
  fs::remove_all(dir);
}

TEST_CASE("interaction config validation") {
  auto c = slab(Geometry::counter);
  CHECK_NOTHROW(c.validate());
  c.gain = 1.6;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.geometry = Geometry::co;
  CHECK_NOTHROW(c.validate());
  c.poling_order = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  auto bad = slab(Geometry::co);
  bad.lambda_i = 1500e-9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK(parse_geometry("co") == Geometry::co);
  CHECK_THROWS_AS(parse_geometry("sideways"), ConfigError);
}
