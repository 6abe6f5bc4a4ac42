#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "mopo/dispersion.hpp"
#include "mopo/errors.hpp"
#include "mopo/gain.hpp"
#include "mopo/intensity_noise.hpp"
#include "mopo/spectra.hpp"

using namespace mopo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 74.9e-12;

CoefficientModel model(double g) {
  return make_model(g, 0.0,
                    PhaseMismatch::linearized(Geometry::counter, Timescales::from_taus(kTau, 0.0, 2.24e-14), 0.01));
}

}  // namespace

TEST_CASE("mean intensity") {
  CHECK(mean_intensity(model(0.0)) == 0.0);
  const double i = mean_intensity(model(0.1));
  CHECK(mean_intensity_spontaneous(0.1, kTau) == doctest::Approx(6.68e7).epsilon(1e-3));
  CHECK(i == doctest::Approx(mean_intensity_spontaneous(0.1, kTau)).epsilon(5e-3));

  const double g = kPi / 2.0 - 0.1;
  const double total = 2.0 * mean_intensity(model(g));
  CHECK(std::abs(total / total_intensity_near_threshold(g, 1.0 / kTau) - 1.0) < 0.03);
}

TEST_CASE("closed-form limits") {
  CHECK(vminus_spontaneous(0.0) == 0.0);
  CHECK(vminus_spontaneous(kPi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(vminus_spontaneous(kPi / 2.0) == doctest::Approx(0.3634).epsilon(1e-4));

  CHECK(std::abs(vminus_near_threshold(0.0, kPi / 2.0)) < 1e-15);
  CHECK(vminus_near_threshold(2.6, 1.5) < 1.0);
  CHECK(vminus_near_threshold(3.5, 1.5) > 1.0);
  const double eps = 0.1;
  CHECK(near_threshold_lorentzian(0.0, kPi / 2.0 - eps) ==
        doctest::Approx(1.0 / std::pow(std::sin(eps), 2)).epsilon(1e-12));
  CHECK(near_threshold_lorentzian(50.0, 1.5) == doctest::Approx(1.0).epsilon(1e-3));

  CHECK(variance_spontaneous(kTau, kTau) == 0.5);
  CHECK(variance_spontaneous(0.5 * kTau, kTau) == 0.75);
  CHECK(variance_spontaneous(4.0 * kTau, kTau) == 0.125);
  CHECK(variance_spontaneous(kTau * (1.0 + 1e-12), kTau) == doctest::Approx(0.5));

  CHECK(triangle_limit(0.0, 0.1, kTau) == doctest::Approx(0.01 / (2.0 * kTau)));
  CHECK(triangle_limit(2.5 * kTau, 0.1, kTau) == 0.0);
  CHECK(rect_limit(0.5 * kTau, 0.1, kTau) == doctest::Approx(0.1 / (2.0 * kTau)));
  CHECK(rect_limit(1.5 * kTau, 0.1, kTau) == 0.0);

  const auto t = default_detection_times(kTau);
  CHECK(t.size() == 40);
  CHECK(t.front() == doctest::Approx(0.05 * kTau));
  CHECK(t.back() == doctest::Approx(50.0 * kTau));
}

TEST_CASE("V_- vanishes at zero offset and is even") {
  for (double g : {0.1, 0.8, 1.5}) {
    const auto m = model(g);
    const double sn = 2.0 * mean_intensity(m);
    CHECK(vminus_at(0.0, m) / sn < 1e-6);
    const double a = vminus_at(1.3 / kTau, m);
    const double b = vminus_at(-1.3 / kTau, m);
    CHECK(a == doctest::Approx(b).epsilon(1e-5));
  }
}

TEST_CASE("V_- / SN against the small-gain and near-threshold forms") {
  const std::vector<double> xs = {0.5, 1.0, 2.0, 2.4, 3.5, 5.0};
  std::vector<double> grid;
  for (double x : xs) grid.push_back(x / kTau);

  const auto low = vminus_spectrum(grid, model(0.1));
  const auto& vl = low.get("vminus_normalized");
  for (std::size_t k = 0; k < xs.size(); ++k) CHECK(std::abs(vl[k] - vminus_spontaneous(xs[k])) < 0.02);

  const auto high = vminus_spectrum(grid, model(1.5));
  const auto& vh = high.get("vminus_normalized");
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(vh[k] - vminus_near_threshold(xs[k], 1.5)) < 0.05);

  // Sub-shot-noise band at both gains.
  CHECK(vl[3] < 1.0);
  CHECK(vh[3] < 1.0);
}

TEST_CASE("photon-number variance at small gain") {
  const auto m = model(0.1);
  CHECK(std::abs(photon_number_variance(kTau, m) - 0.5) < 0.02);
  CHECK(std::abs(photon_number_variance(2.0 * kTau, m) - 0.25) < 0.02);
  CHECK(photon_number_variance(0.02 * kTau, m) == doctest::Approx(0.99).epsilon(2e-3));
  CHECK_THROWS_AS(photon_number_variance(0.0, m), ConfigError);

  const std::vector<double> t = {0.3 * kTau, kTau, 3.0 * kTau, 10.0 * kTau};
  const auto curve = photon_number_variance(t, m);
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(curve[k] > 0.0);
    CHECK(curve[k] <= 1.0);
    CHECK(std::abs(curve[k] / variance_spontaneous(t[k], kTau) - 1.0) < 0.02);
    if (k) CHECK(curve[k] <= curve[k - 1]);
  }
}

TEST_CASE("frequency- and time-domain variance agree") {
  const auto m = model(0.1);
  CorrelationOptions co;
  co.cutoff = 400.0;
  for (double t : {0.5, 2.0}) {
    const double freq = photon_number_variance(t * kTau, m);
    const double time = photon_number_variance_time_domain(t * kTau, m, co);
    CHECK(std::abs(time / freq - 1.0) < 0.02);
  }
}

TEST_CASE("field correlations at small gain: triangle and rectangle") {
  const double g = 0.05;
  const auto m = model(g);
  std::vector<double> tau;
  for (int k = -20; k <= 20; ++k) tau.push_back(0.1 * k * kTau);
  const auto f = field_correlations(tau, m);
  REQUIRE(f.self_corr.size() == tau.size());

  const double i = mean_intensity(m);
  CHECK(f.self_corr[20].real() == doctest::Approx(i).epsilon(2e-3));
  CHECK(std::abs(f.self_corr[20].imag()) < 1e-6 * i);

  const double tri_peak = triangle_limit(0.0, g, kTau);
  const double rect_peak = rect_limit(0.0, g, kTau);
  for (std::size_t k = 0; k < tau.size(); ++k) {
    CHECK(std::abs(std::abs(f.self_corr[k]) - triangle_limit(tau[k], g, kTau)) < 0.03 * tri_peak);
    if (std::abs(std::abs(tau[k]) - kTau) > 0.02 * kTau) {
      CHECK(std::abs(std::abs(f.cross_corr[k]) - rect_limit(tau[k], g, kTau)) < 0.03 * rect_peak);
    }
  }

  const auto ic = intensity_correlation_difference(f, i);
  CHECK(ic.delta_weight == doctest::Approx(2.0 * i));
  CHECK(ic.smooth.size() == tau.size());
  // Confined to |tau| <= tau_gvs up to O(g^4).
  CHECK(std::abs(ic.smooth.back()) < 1e-3 * std::abs(ic.smooth[20]));

  const std::vector<double> lopsided = {-kTau, 0.0, 2.0 * kTau};
  const auto bad = field_correlations(lopsided, m);
  CHECK_THROWS_AS(intensity_correlation_difference(bad, i), ConfigError);
}

TEST_CASE("near threshold the difference correlation stays short while G_si has a tail") {
  const auto m = model(1.5);
  CorrelationOptions o;
  o.cutoff = 400.0;
  const std::vector<double> tau = {-3.0 * kTau, 0.0, 3.0 * kTau};
  const auto f = field_correlations(tau, m, o);
  const double tail = std::norm(f.cross_corr[2]);
  const double peak = std::norm(f.cross_corr[1]);
  CHECK(tail > 0.1 * peak);
  const double smooth = intensity_correlation_smooth_at(3.0 * kTau, m, o);
  CHECK(std::abs(smooth) < 0.05 * tail);
}

TEST_CASE("regime tags and report") {
  CHECK(regime_tags(model(0.1)).spontaneous_ok);
  CHECK_FALSE(regime_tags(model(0.1)).near_threshold_ok);
  CHECK(regime_tags(model(1.5)).near_threshold_ok);
  CHECK_FALSE(regime_tags(model(1.0)).spontaneous_ok);

  const std::vector<double> grid = {-1.0 / kTau, 0.0, 1.0 / kTau, 2.0 / kTau};
  const std::vector<double> t = {0.5 * kTau, kTau, 4.0 * kTau};
  const auto r = noise_report(grid, t, model(0.1));
  CHECK(r.shot_noise == doctest::Approx(2.0 * mean_intensity(model(0.1))));
  CHECK(r.vminus.get("vminus_normalized")[1] <= 1e-6);
  REQUIRE(r.variance_curve.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(r.variance_curve[k].first == t[k]);
    CHECK(r.variance_curve[k].second > 0.0);
    CHECK(r.variance_curve[k].second <= 1.0);
    if (k) CHECK(r.variance_curve[k].second <= r.variance_curve[k - 1].second);
  }
  CHECK(r.regime_tags.spontaneous_ok);
}
