#include "mopo/squeeze_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"

namespace mopo {

int TwoModeSqueezeState::default_cutoff(double r) {
  // tanh^(2(n+1)) r ~ exp(-(n+1)/(1+sinh^2 r)), so 20 mean-occupation
  // multiples keep the truncated weight near e^-20.
  const double s = std::sinh(r);
  return static_cast<int>(std::ceil(20.0 * (1.0 + s * s)));
}

TwoModeSqueezeState TwoModeSqueezeState::with_default_cutoff(double r, double theta) {
  return {r, theta, default_cutoff(r)};
}

std::vector<cplx> fock_coefficients(const TwoModeSqueezeState& state) {
  if (state.r < 0.0 || state.n_max < 0) throw ConfigError("fock_coefficients: need r >= 0, n_max >= 0");
  std::vector<cplx> c;
  c.reserve(static_cast<std::size_t>(state.n_max) + 1);
  const double t = std::tanh(state.r);
  double amplitude = 1.0 / std::cosh(state.r);
  for (int n = 0; n <= state.n_max; ++n) {
    c.push_back(std::polar(amplitude, 2.0 * n * state.theta));
    amplitude *= t;
  }
  return c;
}

PairStatistics pair_statistics(const TwoModeSqueezeState& state) {
  PairStatistics s;
  const double sh2 = std::sinh(state.r) * std::sinh(state.r);
  s.mean_n = sh2;
  s.variance_n = sh2 * (1.0 + sh2);
  s.g2 = state.r > 0.0 ? 2.0 : 0.0;
  s.difference_variance = 0.0;
  for (const auto& c : fock_coefficients(state)) s.norm += std::norm(c);
  return s;
}

double quadrature_variance(const SingleModeTransform& t, double phi) {
  const cplx alpha = t.mu * std::polar(1.0, -phi) + std::conj(t.nu) * std::polar(1.0, phi);
  return std::norm(alpha);
}

CpmDecomposition cpm_decomposition_check(const BogoliubovCoeffs& c) {
  CpmDecomposition out;
  out.params = squeeze_params(c);  // throws InvalidCoeffs
  const double r = out.params.r;
  const double theta = out.params.theta;

  // Unit phasors of u_s and u_i; |u| >= 1 so these are always defined.
  const cplx rot_s = c.u_s / std::abs(c.u_s);
  const cplx rot_i = c.u_i / std::abs(c.u_i);

  // c_+/- = [A_s_out +/- A_i_out] / sqrt 2 in the rotated inputs
  // B_+/- = [B_s +/- B_i] / sqrt 2; `sign` selects the output combination.
  auto expand = [&](double sign) {
    const double a_s = std::abs(c.u_s);
    const double a_i = sign * std::abs(c.u_i);
    const cplx b_s = sign * c.v_i * rot_s;
    const cplx b_i = c.v_s * rot_i;
    struct {
      SingleModeTransform plus, minus;
    } t{{0.5 * (a_s + a_i), 0.5 * (b_s + b_i)}, {0.5 * (a_s - a_i), 0.5 * (b_s - b_i)}};
    return t;
  };
  const auto sum = expand(+1.0);
  const auto diff = expand(-1.0);
  out.sum = sum.plus;
  out.difference = diff.minus;

  const cplx squeeze = std::polar(std::sinh(r), 2.0 * theta);
  const double ch = std::cosh(r);
  out.residual = std::max({std::abs(sum.plus.mu - ch), std::abs(sum.plus.nu - squeeze),
                           std::abs(diff.minus.mu - ch), std::abs(diff.minus.nu + squeeze),
                           // the other mode must not leak into either output
                           std::abs(sum.minus.mu), std::abs(sum.minus.nu),
                           std::abs(diff.plus.mu), std::abs(diff.plus.nu)});
  out.squeezed_variance = quadrature_variance(out.difference, theta);
  out.antisqueezed_variance = quadrature_variance(out.difference, theta + std::numbers::pi / 2.0);
  return out;
}

}  // namespace mopo
