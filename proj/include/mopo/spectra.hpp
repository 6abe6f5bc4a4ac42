#pragma once

// Intensity and quadrature-squeezing spectra of the twin beams.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mopo/gain.hpp"

namespace mopo {

/// A frequency grid with named real-valued columns of equal length.
struct SpectrumSeries {
  std::vector<double> omega;             // rad/s
  std::vector<double> omega_normalized;  // omega / normalization
  double normalization = 1.0;            // rad/s
  std::vector<std::pair<std::string, std::vector<double>>> columns;
  /// Grid indices where the optimal squeeze angle is undefined.
  std::vector<std::size_t> flagged;

  void add(std::string name, std::vector<double> values);
  [[nodiscard]] bool has(std::string_view name) const;
  [[nodiscard]] const std::vector<double>& get(std::string_view name) const;
  [[nodiscard]] std::size_t size() const { return omega.size(); }
};

/// Series skeleton over `grid` (strictly increasing) with the normalized axis.
SpectrumSeries make_series(std::span<const double> grid, double normalization);

std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// |W| <= 6 W_gvs with 2048 points (counter) or |W| <= 3 W_gvd with 4096
/// points (co).
std::vector<double> default_grid(const CoefficientModel& model);

/// Columns "intensity" = |V_s(W)|^2 and "intensity_normalized" (peak = 1).
SpectrumSeries intensity_spectrum(std::span<const double> grid, const CoefficientModel& model);

enum class PhaseMode { optimal, fixed };

struct PhaseChoice {
  PhaseMode mode = PhaseMode::optimal;
  /// Local-oscillator phase sum phi_s + phi_i for fixed mode; defaults to
  /// 2 theta(0) taken from the coefficients at W = 0.
  std::optional<double> phi_sum{};
  /// Detection delay applied to the idler (s).
  double delay = 0.0;

  static PhaseChoice optimal() { return {}; }
  static PhaseChoice fixed(std::optional<double> phi = std::nullopt, double delay = 0.0) {
    return {PhaseMode::fixed, phi, delay};
  }
};

/// 2 theta(0) = arg(u_s(0) v_i(0)).
double reference_phase_sum(const CoefficientModel& model);

/// Sigma(W) = [F(W) + F(-W)] / 2 with F(W) = |U_s(W) - V_i*(-W) e^{i(phi + W delay)}|^2.
/// In optimal mode phi minimises Sigma at each W; with symmetric sidebands
/// this is phi = 2 theta(W) and Sigma = e^{-2 r(W)}.
struct SqueezingPoint {
  double sigma = 1.0;
  double phi_sum = 0.0;
  bool angle_undefined = false;
};
SqueezingPoint squeezing_at(double omega, const CoefficientModel& model, const PhaseChoice& phase,
                            std::optional<double> resolved_phi = std::nullopt);

/// Column "sigma" and, in optimal mode, "phi_sum".
SpectrumSeries squeezing_spectrum(std::span<const double> grid, const CoefficientModel& model,
                                  const PhaseChoice& phase);

struct FixedAngleIdentity {
  double sigma = 1.0;
  double squeezed_part = 1.0;  // e^{-2r}
  double excess_part = 0.0;    // 2 sinh(2r) sin^2(theta - theta0)
};

FixedAngleIdentity fixed_angle_identity(double r, double theta, double theta0);

struct SqueezingBandwidth {
  double omega = 0.0;  // rad/s, first upward crossing of Sigma = 1
  /// W_gvs sqrt(pi^2 - g^2) for the counter-propagating linearized model.
  std::optional<double> closed_form{};
};

/// Bisects the first crossing of the fixed-angle Sigma through the shot-noise
/// level on the positive part of `grid`. Throws NoCrossing if Sigma never
/// dips below 1 and comes back.
SqueezingBandwidth squeezing_bandwidth(const CoefficientModel& model, const PhaseChoice& phase,
                                       std::span<const double> grid);

}  // namespace mopo
