#pragma once

// Algebra of the two-mode squeezed state of one frequency-conjugate pair.

#include <complex>
#include <vector>

#include "mopo/gain.hpp"

namespace mopo {

struct TwoModeSqueezeState {
  double r = 0.0;
  double theta = 0.0;
  int n_max = 0;

  /// Cutoff ceil(20 (1 + sinh^2 r)); truncated weight stays below ~2e-9.
  static TwoModeSqueezeState with_default_cutoff(double r, double theta);
  static int default_cutoff(double r);
};

/// c_N = tanh^N(r) e^{2 i N theta} / cosh r for N = 0..n_max.
std::vector<cplx> fock_coefficients(const TwoModeSqueezeState& state);

struct PairStatistics {
  double mean_n = 0.0;
  double variance_n = 0.0;
  /// Second-order autocorrelation of one arm (thermal marginal: 2 for r > 0).
  double g2 = 0.0;
  /// Variance of N_s - N_i; identically zero for a two-mode squeezed state.
  double difference_variance = 0.0;
  /// Sum of |c_N|^2 over the truncated expansion.
  double norm = 0.0;
};

/// Closed-form pair statistics; `norm` reports the truncation of the Fock
/// expansion at state.n_max.
PairStatistics pair_statistics(const TwoModeSqueezeState& state);

/// Single-mode squeeze transform c = mu B + nu B^dag.
struct SingleModeTransform {
  cplx mu{};
  cplx nu{};
};

struct CpmDecomposition {
  SingleModeTransform sum;
  SingleModeTransform difference;
  SqueezeParams params;
  /// Largest deviation of (mu, nu) from (cosh r, +/- e^{2i theta} sinh r)
  /// after removing the input phase rotations.
  double residual = 0.0;
  /// Quadrature variances of the difference mode at angle theta and
  /// theta + pi/2, shot noise = 1.
  double squeezed_variance = 1.0;
  double antisqueezed_variance = 1.0;
};

/// Builds the sum and difference modes c_+/- = (A_s_out(W) +/- A_i_out(-W))/sqrt 2
/// from the coefficients and checks that each is a single-mode squeeze
/// transform with parameters (r, theta) and (r, theta + pi/2). Throws
/// InvalidCoeffs when the coefficients are not unitary.
CpmDecomposition cpm_decomposition_check(const BogoliubovCoeffs& c);

/// Variance (shot noise = 1) of the quadrature X_phi = c e^{-i phi} + c^dag e^{i phi}
/// for c = mu B + nu B^dag with B in vacuum.
double quadrature_variance(const SingleModeTransform& t, double phi);

}  // namespace mopo
