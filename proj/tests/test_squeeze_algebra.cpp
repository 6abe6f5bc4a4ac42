#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mopo/dispersion.hpp"
#include "mopo/errors.hpp"
#include "mopo/gain.hpp"
#include "mopo/squeeze_algebra.hpp"

using namespace mopo;

namespace {

PhaseMismatch counter_lin() {
  return PhaseMismatch::linearized(Geometry::counter, Timescales::from_taus(7.5e-11, 0.0, 2e-14), 0.01);
}

}  // namespace

TEST_CASE("Fock coefficients: vacuum") {
  const auto c = fock_coefficients({0.0, 0.3, 5});
  REQUIRE(c.size() == 6);
  CHECK(c[0] == cplx(1.0, 0.0));
  for (std::size_t n = 1; n < c.size(); ++n) CHECK(std::abs(c[n]) == 0.0);
}

TEST_CASE("Fock coefficients at r = 1") {
  const auto c = fock_coefficients({1.0, 0.0, 3});
  const double expected[] = {0.6481, 0.4937, 0.3760, 0.2864};
  for (int n = 0; n < 4; ++n) {
    CHECK(c[n].real() == doctest::Approx(expected[n]).epsilon(2e-4));
    CHECK(c[n].real() == doctest::Approx(std::pow(std::tanh(1.0), n) / std::cosh(1.0)).epsilon(1e-14));
    CHECK(c[n].imag() == 0.0);
  }
  const auto rotated = fock_coefficients({1.0, 0.4, 3});
  CHECK(std::arg(rotated[2]) == doctest::Approx(1.6));
}

TEST_CASE("truncated norm obeys the geometric bound") {
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    for (int n_max : {0, 3, 10, 40}) {
      const auto s = pair_statistics({r, 0.0, n_max});
      const double bound = std::pow(std::tanh(r), 2.0 * (n_max + 1));
      CHECK(1.0 - s.norm <= bound * (1.0 + 1e-10) + 1e-15);
      CHECK(s.norm <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("series sums match sinh^2 r") {
  const double r = 1.1;
  const auto state = TwoModeSqueezeState::with_default_cutoff(r, 0.2);
  const auto c = fock_coefficients(state);
  double norm = 0.0;
  double mean = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    norm += std::norm(c[n]);
    mean += static_cast<double>(n) * std::norm(c[n]);
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(mean == doctest::Approx(std::pow(std::sinh(r), 2)).epsilon(1e-6));
}

TEST_CASE("pair statistics") {
  const auto vac = pair_statistics({0.0, 0.0, 10});
  CHECK(vac.mean_n == 0.0);
  CHECK(vac.variance_n == 0.0);
  CHECK(vac.difference_variance == 0.0);

  const double r = std::asinh(std::tan(1.0));
  const auto s = pair_statistics(TwoModeSqueezeState::with_default_cutoff(r, 0.0));
  CHECK(s.mean_n == doctest::Approx(std::norm(mopo_coefficients(0.0, 1.0, 0.0, counter_lin()).v_s)));
  CHECK(s.mean_n == doctest::Approx(2.4255).epsilon(1e-4));
  CHECK(s.variance_n == doctest::Approx(s.mean_n * (1.0 + s.mean_n)));
  CHECK(s.g2 == 2.0);
  CHECK(s.difference_variance == 0.0);
  CHECK(1.0 - s.norm < 1e-8);
}

TEST_CASE("default cutoff keeps truncation below 1e-8") {
  for (double r : {0.05, 0.5, 1.0, 1.5, 2.5}) {
    const auto s = pair_statistics(TwoModeSqueezeState::with_default_cutoff(r, 0.0));
    CHECK(1.0 - s.norm < 1e-8);
  }
}

TEST_CASE("sum and difference modes are single-mode squeezers") {
  const auto p = counter_lin();
  for (double g : {0.3, 1.0, 1.5}) {
    for (double x : {0.0, 0.6, 2.4}) {
      const auto c = mopo_coefficients(x / 7.5e-11, g, 0.9, p);
      const auto d = cpm_decomposition_check(c);
      CHECK(d.residual < 1e-10);
      const double r = d.params.r;
      CHECK(d.squeezed_variance == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-10));
      CHECK(d.antisqueezed_variance == doctest::Approx(std::exp(2.0 * r)).epsilon(1e-10));
      CHECK(d.squeezed_variance * d.antisqueezed_variance == doctest::Approx(1.0).epsilon(1e-10));

      // Rotating theta by pi/2 maps the sum-mode transform onto the difference mode.
      const SingleModeTransform swapped{std::cosh(r),
                                        std::polar(std::sinh(r), 2.0 * (d.params.theta + std::numbers::pi / 2))};
      CHECK(std::abs(swapped.mu - d.difference.mu) < 1e-10);
      CHECK(std::abs(swapped.nu - d.difference.nu) < 1e-10);
      CHECK(quadrature_variance(d.sum, d.params.theta + std::numbers::pi / 2) ==
            doctest::Approx(d.squeezed_variance).epsilon(1e-10));
    }
  }
}

TEST_CASE("decomposition at zero gain and for non-unitary input") {
  const auto d = cpm_decomposition_check(mopo_coefficients(1e9, 0.0, 0.0, counter_lin()));
  CHECK(d.residual < 1e-15);
  CHECK(d.squeezed_variance == doctest::Approx(1.0));

  BogoliubovCoeffs bad;
  bad.u_s = std::polar(1.3, 0.2);
  bad.v_s = std::polar(0.4, 1.1);
  bad.u_i = std::polar(1.1, -0.5);
  bad.v_i = std::polar(0.9, 2.3);
  CHECK_THROWS_AS(cpm_decomposition_check(bad), InvalidCoeffs);
}
