#pragma once

// Run configuration for the command-line front end. The key-value schema is
// documented in docs/formats.md.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopo/dispersion.hpp"
#include "mopo/gain.hpp"
#include "mopo/intensity_noise.hpp"
#include "mopo/keyvalue.hpp"
#include "mopo/spectra.hpp"

namespace mopo {

struct Scenario {
  std::string material = "ppln-congruent-e";
  std::string pump_material;  // empty = same as `material`
  std::string signal_material;
  std::string idler_material;
  Geometry geometry = Geometry::counter;
  MismatchMode mismatch = MismatchMode::exact;
  bool propagation_phase = true;
  double lambda_p = 771e-9;  // m
  double lambda_s = 1542e-9;
  double crystal_length = 0.01;
  double poling_period = 0.0;  // 0 = solve
  int poling_order = 1;
  double pump_phase = 0.0;
  std::vector<double> gains;  // empty = figure default
  PhaseMode phase = PhaseMode::optimal;
  std::optional<double> phi_sum;
  double delay = 0.0;  // s
  std::size_t grid_points = 0;  // 0 = geometry default
  double grid_extent = 0.0;     // bandwidth units, 0 = geometry default
  std::size_t t_d_points = 40;
  double t_d_min = 0.05;  // tau_gvs units
  double t_d_max = 50.0;
  double noise_cutoff = 400.0;
  double correlation_cutoff = 4000.0;
  double rel_tol = 1e-6;
  unsigned threads = 0;
  std::filesystem::path output_dir = "out";

  /// Defaults for a geometry: counter or co-propagating PPLN slab.
  static Scenario defaults(Geometry geometry);

  /// Builds from parsed key-value pairs on top of `defaults(geometry)`.
  /// Unknown keys and malformed values throw ConfigError.
  static Scenario from_keyvalue(const KeyValueFile& kv);
  static Scenario load(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

  /// Canonical key-value pairs, in schema order (used by the manifest).
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;

  /// Throws ConfigError on inconsistent settings, including counter gains
  /// at or above pi/2.
  void validate() const;

  [[nodiscard]] Media media() const;
  [[nodiscard]] InteractionConfig interaction(double gain = 0.0) const;
  /// Interaction with the poling period solved (or as supplied).
  [[nodiscard]] InteractionConfig solved_interaction(const Media& media, double gain = 0.0) const;
  [[nodiscard]] PhaseMismatch phase_mismatch(const Media& media) const;
  [[nodiscard]] PhaseChoice phase_choice() const;
  [[nodiscard]] NoiseOptions noise_options() const;
  [[nodiscard]] CorrelationOptions correlation_options() const;
};

/// Every key understood by the scenario parser.
const std::vector<std::string_view>& scenario_keys();

}  // namespace mopo
