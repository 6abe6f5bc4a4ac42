#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mopo/errors.hpp"
#include "mopo/numerics.hpp"

using namespace mopo;

TEST_CASE("integrate: sine over half a period") {
  QuadratureOptions o;
  o.rel_tol = 1e-12;
  const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, o);
  CHECK(std::abs(r.value - 2.0) < 1e-10);
  CHECK(r.error_estimate >= 0.0);
  CHECK(r.error_estimate <= 1e-12 * 2.0 * 1.0000001);
}

TEST_CASE("integrate: narrow Lorentzian with seeds at its half-width") {
  const double s = 1e-3;
  QuadratureOptions o;
  o.rel_tol = 1e-10;
  o.seeds = {-s, s};
  const auto r = integrate([&](double x) { return 1.0 / (s * s + x * x); }, -100 * s, 100 * s, o);
  const double exact = 2.0 / s * std::atan(100.0);
  CHECK(std::abs(r.value / exact - 1.0) < 1e-8);
}

TEST_CASE("integrate: 1/x singularity exhausts the panel budget") {
  QuadratureOptions o;
  o.max_panels = 2000;
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, o), QuadratureFailure);
}

TEST_CASE("integrate: degenerate and reversed intervals") {
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 2.0, 1.0), QuadratureFailure);
}

TEST_CASE("integrate: tighter tolerance never worsens the achieved error") {
  auto f = [](double x) { return std::exp(-x) * std::cos(7.0 * x); };
  const double exact = (1.0 - std::exp(-5.0) * (std::cos(35.0) - 7.0 * std::sin(35.0))) / 50.0;
  double previous = 1.0;
  for (double tol : {1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6, 1e-8}) {
    QuadratureOptions o;
    o.rel_tol = tol;
    o.abs_tol = 0.0;
    const double err = std::abs(integrate(f, 0.0, 5.0, o).value - exact);
    CHECK(err <= previous * (1.0 + 1e-12) + 1e-16);
    previous = err;
  }
}

TEST_CASE("integrate: bit-identical on repeat") {
  auto f = [](double x) { return std::sin(x * x) / (1.0 + x); };
  const auto a = integrate(f, 0.0, 20.0);
  const auto b = integrate(f, 0.0, 20.0);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.panels_used == b.panels_used);
}

TEST_CASE("integrate: complex-valued integrand") {
  const auto r = integrate([](double x) { return std::polar(1.0, x); }, 0.0, std::numbers::pi);
  CHECK(std::abs(r.value - cplx(0.0, 2.0)) < 1e-12);
}

TEST_CASE("fourier_series: sinc^2 transforms to a triangle") {
  const double cutoff = 2000.0;
  QuadratureOptions o;
  o.abs_tol = 1e-9;
  o.seeds = lattice_seeds(-cutoff, cutoff, 4.0);
  const std::vector<double> taus = {0.0, 0.5, 1.0, 1.5, 2.5};
  const auto out = fourier_series([](double w) { return sinc(w) * sinc(w); }, taus, cutoff, o);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double expected = taus[i] < 2.0 ? 0.5 * (1.0 - taus[i] / 2.0) : 0.0;
    CHECK(std::abs(out[i].real() - expected) < 1e-3);
    CHECK(std::abs(out[i].imag()) < 1e-9);
  }
}

TEST_CASE("fourier_series: zero function") {
  const std::vector<double> taus = {-1.0, 0.0, 1.0};
  for (const auto& v : fourier_series([](double) { return 0.0; }, taus, 10.0)) CHECK(v == cplx{});
}

TEST_CASE("fourier_series: Lorentzian decays at the pole rate") {
  // (1/2pi) * integral e^{i w t} / (1 + w^2) dw = e^{-|t|} / 2
  const double cutoff = 2000.0;
  QuadratureOptions o;
  o.abs_tol = 1e-12;
  o.seeds = lattice_seeds(-cutoff, cutoff, 2.0);
  const std::vector<double> taus = {1.0, 2.0};
  const auto out = fourier_series([](double w) { return 1.0 / (1.0 + w * w); }, taus, cutoff, o);
  const double rate = std::log(out[0].real() / out[1].real());
  CHECK(std::abs(rate - 1.0) < 0.01);
  CHECK(std::abs(out[0].real() - 0.5 * std::exp(-1.0)) < 1e-3);
}

TEST_CASE("find_root") {
  CHECK(std::abs(find_root([](double x) { return x - 1.0; }, 0.0, 2.0) - 1.0) < 1e-12);
  CHECK(std::abs(find_root([](double x) { return std::sin(x); }, 3.0, 3.3) - std::numbers::pi) < 1e-10);
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), BadBracket);
}

TEST_CASE("central_derivatives with Richardson extrapolation") {
  const auto d = central_derivatives([](double x) { return std::exp(x); }, 0.3, 1e-3, 1e-2);
  CHECK(std::abs(d.first / std::exp(0.3) - 1.0) < 1e-9);
  CHECK(std::abs(d.second / std::exp(0.3) - 1.0) < 1e-8);
  CHECK(d.first_rel_error < 1e-6);
}

TEST_CASE("sinc and sinhc are smooth across the series switch") {
  for (double x : {0.0, 5e-5, 9.99e-5, 1.001e-4, 1e-3}) {
    const double sx = x == 0.0 ? 1.0 : std::sin(x) / x;
    const double shx = x == 0.0 ? 1.0 : std::sinh(x) / x;
    CHECK(std::abs(sinc(x) - sx) < 1e-15);
    CHECK(std::abs(sinhc(x) - shx) < 1e-15);
  }
  CHECK(sinc(-2.0) == sinc(2.0));
}

TEST_CASE("lattice_seeds") {
  const double extra[] = {0.25, 0.5};
  const auto s = lattice_seeds(0.0, 2.0, 0.5, extra);
  CHECK(s == std::vector<double>{0.25, 0.5, 1.0, 1.5});
}

TEST_CASE("parallel_for covers every index and rethrows the lowest failure") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
  for (int h : hits) CHECK(h == 1);

  try {
    parallel_for(
        50,
        [](std::size_t i) {
          if (i == 7 || i == 30) throw std::runtime_error("index " + std::to_string(i));
        },
        3);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "index 7");
  }
}
