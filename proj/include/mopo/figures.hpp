#pragma once

// Command pipelines: timescale report, figure data series and gain sweeps.
// Each returns file names with their rendered contents; writing them out is
// left to the caller.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mopo/scenario.hpp"

namespace mopo {

struct OutputFile {
  std::string name;
  std::string content;
};

struct RunResult {
  std::vector<OutputFile> files;
  /// Derived quantities recorded in the run manifest.
  nlohmann::ordered_json derived = nlohmann::ordered_json::object();
  /// Human-readable lines for standard output.
  std::vector<std::string> messages;
};

const std::vector<std::string_view>& figure_names();
Geometry figure_geometry(std::string_view name);
std::vector<double> figure_default_gains(std::string_view name);

const std::vector<std::string_view>& sweep_observables();

RunResult run_timescales(const Scenario& scenario);

/// fig3 intensity spectra, fig4 squeezing spectra (optimal and fixed),
/// fig5 co-propagating squeezing and intensity, fig6 intensity-difference
/// spectra, fig7 photon-number-difference variance. Throws ConfigError if
/// the scenario geometry does not match the figure.
RunResult run_figure(std::string_view name, const Scenario& scenario);

/// Observables: sigma0 (optimal Sigma at W = 0), bandwidth (fixed-angle
/// sub-shot-noise half-width), intensity (<I_s>). Throws ConfigError on an
/// empty gain list.
RunResult run_sweep(std::string_view observable, const Scenario& scenario);

/// Optional gnuplot script plotting the third CSV column of each file.
std::string gnuplot_script(const RunResult& result, std::string_view title);

}  // namespace mopo
