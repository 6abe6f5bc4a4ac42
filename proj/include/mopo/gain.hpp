#pragma once

// Bogoliubov input-output coefficients of the slab and the squeeze
// parameters extracted from them.

#include <complex>
#include <functional>

#include "mopo/dispersion.hpp"

namespace mopo {

using cplx = std::complex<double>;

/// Coefficients of one frequency-conjugate pair at offset W:
///   A_s_out(W)  = u_s A_s_in(W)  + v_s A_i_in^dag(-W)
///   A_i_out(-W) = u_i A_i_in(-W) + v_i A_s_in^dag(W)
/// so u_i and v_i are the idler coefficients evaluated at -W.
struct BogoliubovCoeffs {
  double omega = 0.0;
  cplx u_s{1.0, 0.0};
  cplx v_s{};
  cplx u_i{1.0, 0.0};
  cplx v_i{};
  /// Set when a counter-propagating gain lies within 1e-3 of threshold.
  bool near_threshold = false;
};

/// max(| |u_s|^2-|v_s|^2-1 |, | |u_i|^2-|v_i|^2-1 |, |u_s v_i - u_i v_s|).
double unitarity_residual(const BogoliubovCoeffs& c);

struct SqueezeParams {
  double r = 0.0;
  double theta = 0.0;  // rad, in [0, pi)
  bool degenerate = false;  // v = 0, theta carries no information
};

/// r = asinh|v_s|, 2 theta = arg(u_s v_i). Throws InvalidCoeffs if the
/// unitarity residual exceeds 1e-8.
SqueezeParams squeeze_params(const BogoliubovCoeffs& c);

/// Counter-propagating (mirrorless OPO) coefficients. Throws AboveThreshold
/// for g >= pi/2.
BogoliubovCoeffs mopo_coefficients(double omega, double gain, double pump_phase,
                                   const PhaseMismatch& mismatch);

/// Single-pass co-propagating coefficients:
///   U = e^{i(k_j l - Delta l/2)} [cosh G + i (Delta l/2) sinh(G)/G]
///   V = e^{i(k_j l - Delta l/2)} g e^{i phi_p} sinh(G)/G
/// with G^2 = g^2 - (Delta l/2)^2. Both cosh G and sinh(G)/G are even in G,
/// so the branch point G = 0 is crossed smoothly. With this phase
/// convention 2 theta(0) = (k_p - k_G) l_c + phi_p.
BogoliubovCoeffs copro_coefficients(double omega, double gain, double pump_phase,
                                    const PhaseMismatch& mismatch);

/// A coefficient source over the offset W together with the scales needed
/// to pick integration domains.
struct CoefficientModel {
  std::function<BogoliubovCoeffs(double)> evaluate;
  Geometry geometry = Geometry::counter;
  double gain = 0.0;
  /// W_gvs for counter-propagation, W_gvd for co-propagation (rad/s).
  double bandwidth = 1.0;
  /// W_gvs regardless of geometry (rad/s).
  double omega_gvs = 1.0;
  bool linearized = false;
  bool keeps_propagation_phase = true;

  BogoliubovCoeffs operator()(double omega) const { return evaluate(omega); }
};

/// Binds gain, pump phase and the mismatch into a model for the mismatch's
/// geometry.
CoefficientModel make_model(double gain, double pump_phase, const PhaseMismatch& mismatch);

}  // namespace mopo
