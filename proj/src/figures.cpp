#include "mopo/figures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"
#include "mopo/output.hpp"

namespace mopo {

namespace {

using Json = nlohmann::ordered_json;

struct Setup {
  Media media;
  InteractionConfig config;
  PhaseMismatch mismatch;
  Timescales scales;
};

Setup prepare(const Scenario& s) {
  auto media = s.media();
  auto config = s.solved_interaction(media);
  auto mismatch = s.phase_mismatch(media);
  const auto scales = mismatch.scales();
  return {std::move(media), std::move(config), std::move(mismatch), scales};
}

Json scales_json(const Setup& st) {
  Json j;
  j["geometry"] = std::string(to_string(st.config.geometry));
  j["lambda_i_m"] = st.config.lambda_i;
  j["poling_period_m"] = st.config.poling_period;
  j["tau_gvs_s"] = st.scales.tau_gvs;
  j["tau_gvm_s"] = st.scales.tau_gvm;
  j["tau_gvd_s"] = st.scales.tau_gvd;
  j["omega_gvs_rad_s"] = st.scales.omega_gvs;
  j["omega_gvm_rad_s"] = st.scales.omega_gvm;
  j["omega_gvd_rad_s"] = st.scales.omega_gvd;
  return j;
}

std::vector<double> figure_grid(const Scenario& s, const CoefficientModel& model) {
  if (s.grid_points == 0 && s.grid_extent == 0.0) return default_grid(model);
  const bool counter = model.geometry == Geometry::counter;
  const double extent = s.grid_extent > 0.0 ? s.grid_extent : (counter ? 6.0 : 3.0);
  const std::size_t points = s.grid_points > 0 ? s.grid_points : (counter ? 2048 : 4096);
  return uniform_grid(-extent * model.bandwidth, extent * model.bandwidth, points);
}

std::vector<double> gains_for(std::string_view figure, const Scenario& s) {
  return s.gains.empty() ? figure_default_gains(figure) : s.gains;
}

std::string file_name(std::string_view stem, double gain) {
  return std::string(stem) + "_g" + format_double(gain) + ".csv";
}

CsvTable axis_table(const SpectrumSeries& series) {
  CsvTable t;
  t.add("omega_rad_s", series.omega);
  t.add("omega_normalized", series.omega_normalized);
  return t;
}

// 2 theta(W) - 2 theta(0), unwrapped outward from the point nearest W = 0.
std::vector<double> angle_drift(std::span<const double> grid, const CoefficientModel& model) {
  const auto c0 = model(0.0);
  const cplx ref = std::conj(c0.u_s * c0.v_i);
  std::vector<double> wrapped(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto c = model(grid[i]);
    wrapped[i] = std::arg(c.u_s * c.v_i * ref);
  }
  if (grid.empty()) return wrapped;
  std::size_t center = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i]) < std::abs(grid[center])) center = i;
  }
  std::vector<double> out = wrapped;
  auto unwrap = [&](std::size_t from, std::size_t to) {
    const double step = wrapped[to] - wrapped[from];
    const double turns = std::round(step / (2.0 * std::numbers::pi));
    out[to] = out[from] + step - turns * 2.0 * std::numbers::pi;
  };
  for (std::size_t i = center + 1; i < grid.size(); ++i) unwrap(i - 1, i);
  for (std::size_t i = center; i-- > 0;) unwrap(i + 1, i);
  return out;
}

std::optional<double> try_bandwidth(const CoefficientModel& model, const PhaseChoice& phase,
                                    std::span<const double> grid) {
  try {
    return squeezing_bandwidth(model, phase, grid).omega;
  } catch (const NoCrossing&) {
    return std::nullopt;
  }
}

Json optional_json(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

void require_geometry(std::string_view name, const Scenario& s) {
  if (s.geometry != figure_geometry(name)) {
    throw ConfigError(std::string(name) + " needs geometry = " + std::string(to_string(figure_geometry(name))));
  }
}

RunResult figure_intensity(std::string_view name, const Scenario& s, const Setup& st) {
  RunResult r;
  Json per_gain = Json::array();
  for (double g : gains_for(name, s)) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    const auto grid = figure_grid(s, model);
    const auto series = intensity_spectrum(grid, model);
    auto table = axis_table(series);
    table.add("intensity", series.get("intensity"));
    table.add("intensity_normalized", series.get("intensity_normalized"));
    r.files.push_back({file_name(name, g), table.render()});
    const auto& raw = series.get("intensity");
    per_gain.push_back({{"gain", g}, {"peak_intensity", *std::max_element(raw.begin(), raw.end())}});
  }
  r.derived["gains"] = per_gain;
  return r;
}

RunResult figure_squeezing(std::string_view name, const Scenario& s, const Setup& st) {
  RunResult r;
  Json per_gain = Json::array();
  for (double g : gains_for(name, s)) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    const auto grid = figure_grid(s, model);
    const auto fixed = PhaseChoice::fixed(s.phi_sum, s.delay);
    const auto opt = squeezing_spectrum(grid, model, PhaseChoice{PhaseMode::optimal, std::nullopt, s.delay});
    const auto fix = squeezing_spectrum(grid, model, fixed);
    std::vector<double> flag(grid.size(), 0.0);
    for (auto i : opt.flagged) flag[i] = 1.0;

    auto table = axis_table(opt);
    table.add("sigma_optimal", opt.get("sigma"));
    table.add("sigma_fixed", fix.get("sigma"));
    table.add("angle_undefined", std::move(flag));
    r.files.push_back({file_name(name, g), table.render()});

    const double phi = s.phi_sum ? *s.phi_sum : reference_phase_sum(model);
    per_gain.push_back({{"gain", g},
                        {"phi_sum_rad", phi},
                        {"sigma_optimal_at_zero", squeezing_at(0.0, model, PhaseChoice::optimal()).sigma},
                        {"fixed_bandwidth_rad_s", optional_json(try_bandwidth(model, fixed, grid))},
                        {"flagged_points", opt.flagged.size()}});
  }
  r.derived["gains"] = per_gain;
  return r;
}

RunResult figure_coprop(std::string_view name, const Scenario& s, const Setup& st) {
  RunResult r;
  Json per_gain = Json::array();
  for (double g : gains_for(name, s)) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    const auto grid = figure_grid(s, model);
    const auto fixed = PhaseChoice::fixed(s.phi_sum, s.delay);
    const auto sq = squeezing_spectrum(grid, model, fixed);
    const auto in = intensity_spectrum(grid, model);
    std::vector<double> law(grid.size());
    const double slope = g > 0.0 ? std::tanh(g) / g : 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i] / model.bandwidth;
      law[i] = x * x * slope;
    }
    auto table = axis_table(sq);
    table.add("sigma_fixed", sq.get("sigma"));
    table.add("intensity", in.get("intensity"));
    table.add("intensity_normalized", in.get("intensity_normalized"));
    table.add("angle_drift", angle_drift(grid, model));
    table.add("angle_drift_law", std::move(law));
    r.files.push_back({file_name(name, g), table.render()});

    const double phi = s.phi_sum ? *s.phi_sum : reference_phase_sum(model);
    per_gain.push_back({{"gain", g},
                        {"phi_sum_rad", phi},
                        {"fixed_bandwidth_rad_s", optional_json(try_bandwidth(model, fixed, grid))}});
  }
  r.derived["gains"] = per_gain;
  return r;
}

RunResult figure_vminus(std::string_view name, const Scenario& s, const Setup& st) {
  RunResult r;
  Json per_gain = Json::array();
  const auto opts = s.noise_options();
  for (double g : gains_for(name, s)) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    const auto grid = figure_grid(s, model);
    const double sn = 2.0 * mean_intensity(model, opts);
    const auto vm = vminus_spectrum(grid, model, opts, sn);
    const auto fix = squeezing_spectrum(grid, model, PhaseChoice::fixed(s.phi_sum, s.delay));
    std::vector<double> spont(grid.size());
    std::vector<double> near(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i] / st.scales.omega_gvs;
      spont[i] = vminus_spontaneous(x);
      near[i] = vminus_near_threshold(x, g);
    }
    auto table = axis_table(vm);
    table.add("vminus", vm.get("vminus"));
    table.add("vminus_normalized", vm.get("vminus_normalized"));
    table.add("spontaneous_limit", std::move(spont));
    table.add("near_threshold_limit", std::move(near));
    table.add("sigma_fixed", fix.get("sigma"));
    r.files.push_back({file_name(name, g), table.render()});

    const auto tags = regime_tags(model);
    per_gain.push_back({{"gain", g},
                        {"shot_noise_photons_s", sn},
                        {"spontaneous_ok", tags.spontaneous_ok},
                        {"near_threshold_ok", tags.near_threshold_ok}});
  }
  r.derived["gains"] = per_gain;
  return r;
}

RunResult figure_variance(std::string_view name, const Scenario& s, const Setup& st) {
  RunResult r;
  Json per_gain = Json::array();
  const auto opts = s.noise_options();
  const double tau = st.scales.tau_gvs;
  std::vector<double> t_d(s.t_d_points);
  const double lo = std::log(s.t_d_min);
  const double hi = std::log(s.t_d_max);
  for (std::size_t i = 0; i < t_d.size(); ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(t_d.size() - 1);
    t_d[i] = tau * std::exp(lo + (hi - lo) * f);
  }
  t_d.front() = tau * s.t_d_min;
  t_d.back() = tau * s.t_d_max;

  std::vector<double> normalized(t_d.size());
  std::vector<double> law(t_d.size());
  for (std::size_t i = 0; i < t_d.size(); ++i) {
    normalized[i] = t_d[i] / tau;
    law[i] = variance_spontaneous(t_d[i], tau);
  }
  for (double g : gains_for(name, s)) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    const double sn = 2.0 * mean_intensity(model, opts);
    CsvTable table;
    table.add("t_d_s", t_d);
    table.add("t_d_normalized", normalized);
    table.add("variance_ratio", photon_number_variance(t_d, model, opts, sn));
    table.add("spontaneous_law", law);
    r.files.push_back({file_name(name, g), table.render()});
    per_gain.push_back({{"gain", g}, {"shot_noise_photons_s", sn}});
  }
  r.derived["gains"] = per_gain;
  return r;
}

}  // namespace

const std::vector<std::string_view>& figure_names() {
  static const std::vector<std::string_view> names = {"fig3", "fig4", "fig5", "fig6", "fig7"};
  return names;
}

Geometry figure_geometry(std::string_view name) {
  if (name == "fig5") return Geometry::co;
  if (name == "fig3" || name == "fig4" || name == "fig6" || name == "fig7") return Geometry::counter;
  throw ConfigError("unknown figure '" + std::string(name) + "'");
}

std::vector<double> figure_default_gains(std::string_view name) {
  if (name == "fig3" || name == "fig4") return {0.5, 1.0, 1.4, 1.5};
  if (name == "fig5") return {0.5, 1.0, 2.0, 3.0};
  if (name == "fig6" || name == "fig7") return {0.1, 0.8, 1.5};
  throw ConfigError("unknown figure '" + std::string(name) + "'");
}

const std::vector<std::string_view>& sweep_observables() {
  static const std::vector<std::string_view> names = {"sigma0", "bandwidth", "intensity"};
  return names;
}

RunResult run_timescales(const Scenario& s) {
  const auto st = prepare(s);
  RunResult r;
  r.derived = scales_json(st);
  // Both gratings, so one report covers the two geometries.
  for (Geometry g : {Geometry::counter, Geometry::co}) {
    auto c = s.interaction();
    c.geometry = g;
    r.derived[std::string("poling_period_") + std::string(to_string(g)) + "_m"] =
        qpm_poling_period(c, st.media);
  }
  r.derived["threshold_gain"] = std::numbers::pi / 2.0;

  Json report = Json::object();
  report["format_version"] = 1;
  report["material"] = s.material;
  for (const auto& [k, v] : r.derived.items()) report[k] = v;
  r.files.push_back({"timescales.json", report.dump(2) + "\n"});

  auto line = [&](std::string label, double v, std::string unit) {
    r.messages.push_back(label + " = " + format_double(v) + (unit.empty() ? "" : " " + unit));
  };
  line("tau_gvs", st.scales.tau_gvs, "s");
  line("tau_gvm", st.scales.tau_gvm, "s");
  line("tau_gvd", st.scales.tau_gvd, "s");
  line("omega_gvs", st.scales.omega_gvs, "rad/s");
  line("omega_gvm", st.scales.omega_gvm, "rad/s");
  line("omega_gvd", st.scales.omega_gvd, "rad/s");
  line("poling_period (" + std::string(to_string(s.geometry)) + ")", st.config.poling_period, "m");
  line("threshold gain", std::numbers::pi / 2.0, "");
  return r;
}

RunResult run_figure(std::string_view name, const Scenario& s) {
  require_geometry(name, s);
  const auto st = prepare(s);
  RunResult r;
  if (name == "fig3") r = figure_intensity(name, s, st);
  if (name == "fig4") r = figure_squeezing(name, s, st);
  if (name == "fig5") r = figure_coprop(name, s, st);
  if (name == "fig6") r = figure_vminus(name, s, st);
  if (name == "fig7") r = figure_variance(name, s, st);
  Json derived = scales_json(st);
  for (const auto& [k, v] : r.derived.items()) derived[k] = v;
  r.derived = std::move(derived);
  for (const auto& f : r.files) r.messages.push_back("wrote " + f.name);
  return r;
}

RunResult run_sweep(std::string_view observable, const Scenario& s) {
  const auto& known = sweep_observables();
  if (std::find(known.begin(), known.end(), observable) == known.end()) {
    throw ConfigError("unknown sweep observable '" + std::string(observable) + "'");
  }
  if (s.gains.empty()) throw ConfigError("sweep needs a non-empty gain list");
  const auto st = prepare(s);
  const bool counter = s.geometry == Geometry::counter;
  const double bw = counter ? st.scales.omega_gvs : st.scales.omega_gvd;

  std::vector<double> value;
  std::vector<double> normalized;
  std::vector<double> closed;
  for (double g : s.gains) {
    const auto model = make_model(g, s.pump_phase, st.mismatch);
    if (observable == "sigma0") {
      value.push_back(squeezing_at(0.0, model, PhaseChoice::optimal()).sigma);
      // e^{-2 r(0)}: tanh r = sin g (counter), r = g (co).
      const double c = counter ? std::pow((1.0 - std::sin(g)) / std::cos(g), 2) : std::exp(-2.0 * g);
      closed.push_back(c);
    } else if (observable == "bandwidth") {
      const auto grid = figure_grid(s, model);
      const auto w = try_bandwidth(model, PhaseChoice::fixed(s.phi_sum, s.delay), grid);
      value.push_back(w ? *w : std::nan(""));
      normalized.push_back(w ? *w / bw : std::nan(""));
      if (counter) {
        closed.push_back(st.scales.omega_gvs * std::sqrt(std::numbers::pi * std::numbers::pi - g * g));
      }
    } else {
      value.push_back(mean_intensity(model, s.noise_options()));
      closed.push_back(mean_intensity_spontaneous(g, st.scales.tau_gvs));
    }
  }

  CsvTable table;
  table.add("gain", s.gains);
  table.add("value", std::move(value));
  if (!normalized.empty()) table.add("value_normalized", std::move(normalized));
  if (!closed.empty()) table.add(observable == "intensity" ? "spontaneous_limit" : "closed_form", std::move(closed));

  RunResult r;
  r.files.push_back({"sweep_" + std::string(observable) + ".csv", table.render()});
  r.derived = scales_json(st);
  r.messages.push_back("wrote " + r.files.back().name);
  return r;
}

std::string gnuplot_script(const RunResult& result, std::string_view title) {
  std::string out = "set datafile separator ','\nset key autotitle columnhead\n";
  out += "set title '" + std::string(title) + "'\n";
  std::string plots;
  for (const auto& f : result.files) {
    if (f.name.size() < 4 || f.name.substr(f.name.size() - 4) != ".csv") continue;
    if (!plots.empty()) plots += ", \\\n     ";
    plots += "'" + f.name + "' using 2:3 with lines title '" + f.name + "'";
  }
  if (!plots.empty()) out += "plot " + plots + "\n";
  return out;
}

}  // namespace mopo
