#pragma once

// Intensity-difference noise of the twin beams: V_-(W), shot noise, the
// photon-number-difference variance over a detection window, and the field
// and intensity correlation functions in the time domain.

#include <span>
#include <utility>
#include <vector>

#include "mopo/gain.hpp"
#include "mopo/numerics.hpp"
#include "mopo/spectra.hpp"

namespace mopo {

struct NoiseOptions {
  double rel_tol = 1e-6;
  /// Frequency cutoff of single-spectrum and convolution integrals, in
  /// units of the model bandwidth.
  double cutoff = 400.0;
  /// Tolerance of the outer window integral of the variance.
  double outer_rel_tol = 1e-5;
  /// Worker threads for grid evaluations (0 = hardware concurrency).
  unsigned threads = 0;
};

/// <I_s> = <I_i> = (1/2pi) * integral |V_s(W)|^2 dW, photons/s.
double mean_intensity(const CoefficientModel& model, const NoiseOptions& opts = {});

/// g^2 / (2 tau_gvs): small-gain limit of the mean intensity.
double mean_intensity_spontaneous(double gain, double tau_gvs);

/// g W_gvs / sin(pi/2 - g): near-threshold limit of <I_s> + <I_i>.
double total_intensity_near_threshold(double gain, double omega_gvs);

/// V_-(W) = (1/2pi) * integral |U_s(W')V_i*(-W-W') - U_s(W+W')V_i*(-W')|^2 dW'.
double vminus_at(double omega, const CoefficientModel& model, const NoiseOptions& opts = {});

/// Columns "vminus" (photons/s) and "vminus_normalized" (V_- / SN with
/// SN = <I_s> + <I_i>). Pass `shot_noise` to skip recomputing it.
SpectrumSeries vminus_spectrum(std::span<const double> grid, const CoefficientModel& model,
                               const NoiseOptions& opts = {},
                               std::optional<double> shot_noise = std::nullopt);

/// 1 - sinc(x), x = W / W_gvs.
double vminus_spontaneous(double x);

/// (G - g sin G) / (G + g sin G) with G = sqrt(g^2 + x^2).
double vminus_near_threshold(double x, double gain);

/// Pole approximation |phi(W)|^2 ~ (g^2 + x^2) / (g^2 sin^2 eps + x^2), eps = pi/2 - g.
double near_threshold_lorentzian(double x, double gain);

/// <(dN_-)^2> / ((<I_s> + <I_i>) T_d) from the sinc^2(T_d W/2)-windowed V_-
/// spectrum. The flat shot-noise part is integrated exactly; the remainder
/// runs to max(30, 20/(T_d W_b)) W_b, W_b = model bandwidth.
double photon_number_variance(double t_d, const CoefficientModel& model, const NoiseOptions& opts = {},
                              std::optional<double> shot_noise = std::nullopt);

std::vector<double> photon_number_variance(std::span<const double> t_d, const CoefficientModel& model,
                                           const NoiseOptions& opts = {},
                                           std::optional<double> shot_noise = std::nullopt);

/// 1 - T_d/(2 tau_gvs) for T_d <= tau_gvs, tau_gvs/(2 T_d) beyond.
double variance_spontaneous(double t_d, double tau_gvs);

/// 40 log-spaced windows from 0.05 tau to 50 tau.
std::vector<double> default_detection_times(double tau);

struct CorrelationOptions {
  double rel_tol = 1e-6;
  /// Fourier cutoff in units of the model bandwidth. The cross correlation
  /// has a step at |tau| = tau_gvs, so ringing decays only as 1/cutoff.
  double cutoff = 4000.0;
  unsigned threads = 0;
};

struct FieldCorrelations {
  std::vector<double> tau;  // s
  /// <A_s^dag(t) A_s(t + tau)> = (1/2pi) * integral e^{i W tau} |V_s(W)|^2 dW.
  std::vector<cplx> self_corr;
  /// <A_s(t) A_i(t + tau)> = (1/2pi) * integral e^{i W tau} U_s(W) V_i(-W) dW.
  std::vector<cplx> cross_corr;
};

FieldCorrelations field_correlations(std::span<const double> tau_grid, const CoefficientModel& model,
                                     const CorrelationOptions& opts = {});

/// (g^2 / 2 tau) (1 - |t| / 2 tau) inside |t| < 2 tau.
double triangle_limit(double t, double gain, double tau_gvs);
/// g / (2 tau) inside |t| < tau.
double rect_limit(double t, double gain, double tau_gvs);

/// <dI_-(t) dI_-(t + tau)> = delta_weight * delta(tau) + smooth(tau) with
///   smooth = 2 |self|^2 - |cross(tau)|^2 - |cross(-tau)|^2,
///   delta_weight = <I_s> + <I_i>.
struct IntensityCorrelation {
  std::vector<double> tau;
  std::vector<double> smooth;
  double delta_weight = 0.0;
};

/// Needs a tau grid symmetric about zero (cross(-tau) is read from the
/// mirrored point). Throws ConfigError otherwise.
IntensityCorrelation intensity_correlation_difference(const FieldCorrelations& fields,
                                                      double mean_intensity);

/// Smooth part of the intensity-difference correlation at one lag.
double intensity_correlation_smooth_at(double tau, const CoefficientModel& model,
                                       const CorrelationOptions& opts = {});

/// Variance ratio from the time domain:
///   1 + (1 / (SN T)) * integral over |tau| < T of (T - |tau|) smooth(tau).
double photon_number_variance_time_domain(double t_d, const CoefficientModel& model,
                                          const CorrelationOptions& opts = {},
                                          std::optional<double> shot_noise = std::nullopt);

struct RegimeTags {
  /// g <= 0.2: the 1 - sinc and piecewise variance laws apply.
  bool spontaneous_ok = false;
  /// Counter-propagating g >= 1.4: the near-threshold closed form applies.
  bool near_threshold_ok = false;
};

RegimeTags regime_tags(const CoefficientModel& model);

struct NoiseReport {
  SpectrumSeries vminus;
  double shot_noise = 0.0;
  std::vector<std::pair<double, double>> variance_curve;  // (T_d in s, ratio)
  RegimeTags regime_tags;
};

NoiseReport noise_report(std::span<const double> grid, std::span<const double> t_d,
                         const CoefficientModel& model, const NoiseOptions& opts = {});

}  // namespace mopo
