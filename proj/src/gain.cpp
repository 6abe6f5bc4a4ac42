#include "mopo/gain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"
#include "mopo/numerics.hpp"

namespace mopo {

namespace {

constexpr double kThreshold = std::numbers::pi / 2.0;
constexpr double kNearThreshold = 1e-3;

}  // namespace

double unitarity_residual(const BogoliubovCoeffs& c) {
  const double rs = std::abs(std::norm(c.u_s) - std::norm(c.v_s) - 1.0);
  const double ri = std::abs(std::norm(c.u_i) - std::norm(c.v_i) - 1.0);
  const double rx = std::abs(c.u_s * c.v_i - c.u_i * c.v_s);
  return std::max({rs, ri, rx});
}

SqueezeParams squeeze_params(const BogoliubovCoeffs& c) {
  if (unitarity_residual(c) > 1e-8) {
    throw InvalidCoeffs("squeeze_params: coefficients violate unitarity");
  }
  SqueezeParams p;
  p.r = std::asinh(std::abs(c.v_s));
  const cplx product = c.u_s * c.v_i;
  if (std::abs(c.v_s) == 0.0 || std::abs(product) == 0.0) {
    p.degenerate = true;
    return p;
  }
  double theta = 0.5 * std::arg(product);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  p.theta = theta;
  return p;
}

BogoliubovCoeffs mopo_coefficients(double omega, double gain, double pump_phase,
                                   const PhaseMismatch& mismatch) {
  if (!(gain < kThreshold)) throw AboveThreshold("mopo_coefficients: g >= pi/2");
  if (gain < 0.0) throw ConfigError("mopo_coefficients: negative gain");

  const auto m = mismatch(omega);
  const double half = m.half_mismatch;
  const double gamma = std::hypot(gain, half);
  const double sinc_gamma = sinc(gamma);
  // phi = 1 / (cos(gamma) - i (D l/2) sin(gamma) / gamma)
  const cplx phi = 1.0 / cplx(std::cos(gamma), -half * sinc_gamma);
  const double ks_l = mismatch.signal_reference_phase();
  const double ki_l = mismatch.idler_reference_phase();
  const double beta = m.propagation_phase;
  const cplx pump = std::polar(gain * sinc_gamma, pump_phase);

  BogoliubovCoeffs c;
  c.omega = omega;
  c.u_s = std::polar(1.0, ks_l + beta) * phi;
  c.v_s = std::polar(1.0, ks_l - ki_l) * pump * phi;
  c.u_i = std::polar(1.0, ki_l + beta) * std::conj(phi);
  c.v_i = pump * std::conj(phi);
  c.near_threshold = kThreshold - gain < kNearThreshold;
  return c;
}

BogoliubovCoeffs copro_coefficients(double omega, double gain, double pump_phase,
                                    const PhaseMismatch& mismatch) {
  if (gain < 0.0) throw ConfigError("copro_coefficients: negative gain");
  const auto m = mismatch(omega);
  const double delta = m.half_mismatch;
  const double gamma2 = gain * gain - delta * delta;

  double ch = 1.0;
  double sh_over = 1.0;  // sinh(G)/G
  if (gamma2 >= 0.0) {
    const double g = std::sqrt(gamma2);
    ch = std::cosh(g);
    sh_over = sinhc(g);
  } else {
    const double g = std::sqrt(-gamma2);
    ch = std::cos(g);
    sh_over = sinc(g);
  }
  const cplx amp(ch, delta * sh_over);
  const cplx pump = std::polar(gain * sh_over, pump_phase);
  const double shift = delta;  // Delta l / 2
  const cplx sig = std::polar(1.0, m.signal_phase - shift);
  const cplx idl = std::polar(1.0, m.idler_phase - shift);

  BogoliubovCoeffs c;
  c.omega = omega;
  c.u_s = sig * amp;
  c.v_s = sig * pump;
  c.u_i = idl * amp;
  c.v_i = idl * pump;
  return c;
}

CoefficientModel make_model(double gain, double pump_phase, const PhaseMismatch& mismatch) {
  CoefficientModel model;
  model.geometry = mismatch.geometry();
  model.gain = gain;
  model.omega_gvs = mismatch.scales().omega_gvs;
  model.bandwidth = model.geometry == Geometry::counter ? mismatch.scales().omega_gvs
                                                       : mismatch.scales().omega_gvd;
  model.linearized = mismatch.mode() == MismatchMode::linearized;
  model.keeps_propagation_phase = mismatch.keeps_propagation_phase();
  if (model.geometry == Geometry::counter) {
    if (!(gain < kThreshold)) throw AboveThreshold("make_model: g >= pi/2");
    model.evaluate = [=](double w) { return mopo_coefficients(w, gain, pump_phase, mismatch); };
  } else {
    model.evaluate = [=](double w) { return copro_coefficients(w, gain, pump_phase, mismatch); };
  }
  return model;
}

}  // namespace mopo
