// mopo: scenario-driven front end for the twin-beam noise model.
//
//   mopo timescales [-s FILE] [--set key=value]...
//   mopo figure {fig3|fig4|fig5|fig6|fig7} [-s FILE] [--gains LIST] [--gnuplot]
//   mopo sweep {sigma0|bandwidth|intensity} [-s FILE] --gains LIST
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mopo/errors.hpp"
#include "mopo/figures.hpp"
#include "mopo/output.hpp"
#include "mopo/scenario.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct CommonArgs {
  std::string scenario;
  std::vector<std::string> sets;
  std::string gains;
  std::string output_dir;
};

std::vector<std::pair<std::string, std::string>> overrides(const CommonArgs& a) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : a.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw mopo::ConfigError("--set expects key=value, got '" + s + "'");
    out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  if (!a.gains.empty()) out.emplace_back("gains", a.gains);
  if (!a.output_dir.empty()) out.emplace_back("output_dir", a.output_dir);
  return out;
}

mopo::Scenario load_scenario(const CommonArgs& a, std::optional<mopo::Geometry> figure_geometry) {
  auto ov = overrides(a);
  // Without a scenario file, a figure starts from its own geometry's defaults.
  if (a.scenario.empty() && figure_geometry) {
    const bool has_geometry =
        std::any_of(ov.begin(), ov.end(), [](const auto& kv) { return kv.first == "geometry"; });
    if (!has_geometry) ov.insert(ov.begin(), {"geometry", std::string(mopo::to_string(*figure_geometry))});
  }
  return mopo::Scenario::load(a.scenario, ov);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const mopo::RunResult& result, const mopo::Scenario& scenario, const std::string& command,
          bool gnuplot, const std::string& stem) {
  nlohmann::ordered_json manifest;
  manifest["tool"] = "mopo";
  manifest["version"] = "0.1.0";
  manifest["command"] = command;
  manifest["created_utc"] = utc_now();
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : scenario.entries()) params[k] = v;
  manifest["scenario"] = params;
  manifest["derived"] = result.derived;
  manifest["files"] = nlohmann::ordered_json::array();

  for (const auto& f : result.files) {
    mopo::write_atomic(scenario.output_dir / f.name, f.content);
    manifest["files"].push_back(f.name);
  }
  if (gnuplot) {
    const std::string name = stem + ".gp";
    mopo::write_atomic(scenario.output_dir / name, mopo::gnuplot_script(result, stem));
    manifest["files"].push_back(name);
  }
  mopo::write_atomic(scenario.output_dir / (stem + "_manifest.json"), manifest.dump(2) + "\n");
  for (const auto& m : result.messages) std::cout << m << '\n';
}

// Bad inputs map to exit code 2; failures of the numerics to 3.
bool is_config_error(const mopo::Error& e) {
  return dynamic_cast<const mopo::ConfigError*>(&e) || dynamic_cast<const mopo::AboveThreshold*>(&e) ||
         dynamic_cast<const mopo::OutOfRange*>(&e) || dynamic_cast<const mopo::NoSolution*>(&e);
}

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("-s,--scenario", a.scenario, "Scenario key-value file");
  cmd->add_option("--set", a.sets, "Override a scenario key (key=value); repeatable");
  cmd->add_option("-o,--output-dir", a.output_dir, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counter-propagating twin-beam squeezing and intensity-noise calculator"};
  app.require_subcommand(1);

  CommonArgs ts_args;
  auto* ts = app.add_subcommand("timescales", "Report slab timescales and quasi-phase-matching periods");
  add_common(ts, ts_args);

  CommonArgs fig_args;
  std::string figure;
  bool gnuplot = false;
  auto* fig = app.add_subcommand("figure", "Write the data series of one figure");
  fig->add_option("name", figure, "fig3 | fig4 | fig5 | fig6 | fig7")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "fig7"}));
  add_common(fig, fig_args);
  fig->add_option("--gains", fig_args.gains, "Comma-separated gain list");
  fig->add_flag("--gnuplot", gnuplot, "Also write a gnuplot script");

  CommonArgs sw_args;
  std::string observable;
  auto* sw = app.add_subcommand("sweep", "Tabulate an observable across gains");
  sw->add_option("observable", observable, "sigma0 | bandwidth | intensity")
      ->required()
      ->check(CLI::IsMember({"sigma0", "bandwidth", "intensity"}));
  add_common(sw, sw_args);
  sw->add_option("--gains", sw_args.gains, "Comma-separated gain list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (ts->parsed()) {
      const auto scenario = load_scenario(ts_args, std::nullopt);
      emit(mopo::run_timescales(scenario), scenario, "timescales", false, "timescales");
    } else if (fig->parsed()) {
      const auto scenario = load_scenario(fig_args, mopo::figure_geometry(figure));
      emit(mopo::run_figure(figure, scenario), scenario, "figure " + figure, gnuplot, figure);
    } else if (sw->parsed()) {
      const auto scenario = load_scenario(sw_args, std::nullopt);
      emit(mopo::run_sweep(observable, scenario), scenario, "sweep " + observable, false,
           "sweep_" + observable);
    }
  } catch (const mopo::Error& e) {
    const bool config = is_config_error(e);
    std::cerr << (config ? "config error: " : "numerical failure: ") << e.what() << '\n';
    return config ? kConfigError : kNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
