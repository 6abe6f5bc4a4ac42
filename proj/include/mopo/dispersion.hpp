#pragma once

// Material dispersion, interaction geometry, quasi-phase matching and the
// slab timescales that set every spectral width in the model.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mopo {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

enum class Geometry { counter, co };
enum class MismatchMode { exact, linearized };

std::string_view to_string(Geometry g);
std::string_view to_string(MismatchMode m);
Geometry parse_geometry(std::string_view text);
MismatchMode parse_mismatch_mode(std::string_view text);

/// Functional forms understood by MaterialDispersion. Wavelengths in the
/// Sellmeier forms are in micrometres.
enum class IndexForm {
  constant,         // n = c0
  sellmeier,        // n^2 = c0 + sum_i c(2i-1) l^2 / (l^2 - c(2i))
  sellmeier_ir,     // n^2 = c0 + c1 / (l^2 - c2^2) - c3 l^2
  quadratic_omega,  // n = c0 + c1 w^2, w in rad/s
};

std::string_view to_string(IndexForm f);
IndexForm parse_index_form(std::string_view text);

struct MaterialDispersion {
  std::string name;
  IndexForm form = IndexForm::constant;
  std::vector<double> coefficients;
  double lambda_min = 0.0;  // m
  double lambda_max = 0.0;  // m

  /// Refractive index at vacuum wavelength `lambda` (m). Throws OutOfRange.
  [[nodiscard]] double index(double lambda) const;
  [[nodiscard]] bool in_range(double lambda) const {
    return lambda >= lambda_min && lambda <= lambda_max;
  }
};

/// Dispersionless medium, handy for tests and quick estimates.
MaterialDispersion constant_material(double n, double lambda_min = 100e-9, double lambda_max = 100e-6);

/// Parses the key-value material format (see docs/formats.md).
MaterialDispersion parse_material(std::string_view text);
MaterialDispersion load_material(const std::filesystem::path& path);

/// Resolves a material by file path or by name. Names are looked up as
/// `<name>.mat` in the directories of MOPO_MATERIAL_PATH (colon separated)
/// followed by the installed data directory.
MaterialDispersion find_material(const std::string& name_or_path);

/// Index functions for the three waves. Type-0 interactions use one material
/// for all of them.
struct Media {
  MaterialDispersion pump;
  MaterialDispersion signal;
  MaterialDispersion idler;

  static Media uniform(const MaterialDispersion& m) { return {m, m, m}; }
};

struct InteractionConfig {
  double lambda_p = 771e-9;  // m
  double lambda_s = 1542e-9;
  double lambda_i = 1542e-9;
  double poling_period = 0.0;  // m; 0 until solved or supplied
  int poling_order = 1;
  double crystal_length = 0.01;  // m
  double gain = 0.0;
  double pump_phase = 0.0;  // rad
  Geometry geometry = Geometry::counter;

  /// Builds a config with the idler wavelength fixed by energy conservation.
  static InteractionConfig from_pump_signal(double lambda_p, double lambda_s, double crystal_length,
                                            Geometry geometry);

  [[nodiscard]] double omega_p() const;
  [[nodiscard]] double omega_s() const;
  [[nodiscard]] double omega_i() const;
  [[nodiscard]] double grating_wavenumber() const;

  /// Checks energy conservation, poling order, and the below-threshold
  /// requirement for the counter-propagating geometry. Throws ConfigError.
  void validate() const;
};

/// k = n(w) w / c. Throws OutOfRange when 2 pi c / w leaves the valid range.
double wavenumber(const MaterialDispersion& material, double omega);

struct GroupDerivatives {
  double k1 = 0.0;  // s/m
  double k2 = 0.0;  // s^2/m
  double k1_rel_error = 0.0;
  double k2_rel_error = 0.0;
};

/// dk/dw and d2k/dw2 by Richardson-extrapolated central differences.
/// Throws NumericalInstability if the extrapolated and fine estimates
/// disagree by more than 1e-4 relative.
GroupDerivatives group_derivatives(const MaterialDispersion& material, double omega);

/// Grating period that zeroes the reference mismatch for the configured
/// geometry and order (the config's own poling_period is ignored).
double qpm_poling_period(const InteractionConfig& config, const Media& media);

struct Timescales {
  double tau_gvs = 0.0;  // s
  double tau_gvm = 0.0;
  double tau_gvd = 0.0;
  double omega_gvs = 0.0;  // rad/s; infinity when the matching tau is zero
  double omega_gvm = 0.0;
  double omega_gvd = 0.0;

  static Timescales from_taus(double tau_gvs, double tau_gvm, double tau_gvd);
};

Timescales timescales(const InteractionConfig& config, const Media& media);

/// Second-order Taylor model of one wave's wavenumber around its carrier.
struct WaveTaylor {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  [[nodiscard]] double at(double offset) const { return k0 + offset * (k1 + 0.5 * k2 * offset); }
};

struct MismatchSample {
  /// D(W) l_c / 2 for counter-propagation, Delta(W) l_c / 2 for co-propagation.
  double half_mismatch = 0.0;
  /// beta(W); always zero for co-propagation.
  double propagation_phase = 0.0;
  /// k_s(w_s + W) l_c and k_i(w_i - W) l_c.
  double signal_phase = 0.0;
  double idler_phase = 0.0;
};

/// Phase-mismatch functions of the frequency offset W, either from the full
/// wavenumbers or from the Taylor model in terms of the slab timescales.
class PhaseMismatch {
 public:
  static PhaseMismatch exact(const InteractionConfig& config, const Media& media);
  static PhaseMismatch linearized(const InteractionConfig& config, const Media& media);
  /// Linearized model from timescales alone; reference wavenumbers are zero.
  /// Used for normalized calculations where only W / W_gvs matters.
  static PhaseMismatch linearized(Geometry geometry, const Timescales& scales, double crystal_length);
  static PhaseMismatch make(MismatchMode mode, const InteractionConfig& config, const Media& media);

  [[nodiscard]] MismatchSample operator()(double omega) const;

  /// Reference mismatch (rad/m) at W = 0.
  [[nodiscard]] double residual() const { return residual_; }
  [[nodiscard]] Geometry geometry() const { return geometry_; }
  [[nodiscard]] MismatchMode mode() const { return mode_; }
  [[nodiscard]] double crystal_length() const { return crystal_length_; }
  [[nodiscard]] const Timescales& scales() const { return scales_; }
  /// k_s l_c and k_i l_c at the carriers.
  [[nodiscard]] double signal_reference_phase() const { return signal_.k0 * crystal_length_; }
  [[nodiscard]] double idler_reference_phase() const { return idler_.k0 * crystal_length_; }

  /// Drops beta(W) from counter-propagating samples.
  PhaseMismatch& without_propagation_phase() {
    keep_beta_ = false;
    return *this;
  }
  [[nodiscard]] bool keeps_propagation_phase() const { return keep_beta_; }

 private:
  PhaseMismatch() = default;

  Geometry geometry_ = Geometry::counter;
  MismatchMode mode_ = MismatchMode::linearized;
  bool keep_beta_ = true;
  double crystal_length_ = 0.0;
  double residual_ = 0.0;
  Timescales scales_{};
  WaveTaylor signal_{};
  WaveTaylor idler_{};
  double pump_k_ = 0.0;
  double grating_k_ = 0.0;
  double omega_s_ = 0.0;
  double omega_i_ = 0.0;
  std::optional<Media> media_{};
};

}  // namespace mopo
