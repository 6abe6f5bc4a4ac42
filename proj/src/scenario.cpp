#include "mopo/scenario.hpp"

#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"
#include "mopo/output.hpp"

namespace mopo {

namespace {

double finite(const KeyValueFile& kv, std::string_view key) {
  const double v = kv.get_double(key);
  if (!std::isfinite(v)) throw ConfigError(std::string(key) + " must be finite");
  return v;
}

double positive(const KeyValueFile& kv, std::string_view key) {
  const double v = finite(kv, key);
  if (!(v > 0.0)) throw ConfigError(std::string(key) + " must be positive");
  return v;
}

std::size_t count(const KeyValueFile& kv, std::string_view key) {
  const int v = kv.get_int(key);
  if (v < 0) throw ConfigError(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

bool on_off(const std::string& text, std::string_view key) {
  if (text == "on") return true;
  if (text == "off") return false;
  throw ConfigError(std::string(key) + " must be 'on' or 'off'");
}

PhaseMode parse_phase(const std::string& text) {
  if (text == "optimal") return PhaseMode::optimal;
  if (text == "fixed") return PhaseMode::fixed;
  throw ConfigError("phase must be 'optimal' or 'fixed'");
}

}  // namespace

const std::vector<std::string_view>& scenario_keys() {
  static const std::vector<std::string_view> keys = {
      "format_version",   "material",       "pump_material",     "signal_material",
      "idler_material",   "geometry",       "mismatch",          "propagation_phase",
      "lambda_p_nm",      "lambda_s_nm",    "crystal_length_mm", "poling_period_nm",
      "poling_order",     "pump_phase_rad", "gains",             "phase",
      "phi_sum_rad",      "delay_ps",       "grid_points",       "grid_extent_bw",
      "t_d_points",       "t_d_min_tau",    "t_d_max_tau",       "noise_cutoff_bw",
      "correlation_cutoff_bw", "rel_tol",   "threads",           "output_dir"};
  return keys;
}

Scenario Scenario::defaults(Geometry geometry) {
  Scenario s;
  s.geometry = geometry;
  return s;
}

Scenario Scenario::from_keyvalue(const KeyValueFile& kv) {
  kv.require_known(scenario_keys());
  if (kv.has("format_version") && kv.get_int("format_version") != 1) {
    throw ConfigError(kv.source() + ": unsupported format_version");
  }
  Scenario s = defaults(kv.has("geometry") ? parse_geometry(kv.get("geometry")) : Geometry::counter);
  if (kv.has("material")) s.material = kv.get("material");
  if (kv.has("pump_material")) s.pump_material = kv.get("pump_material");
  if (kv.has("signal_material")) s.signal_material = kv.get("signal_material");
  if (kv.has("idler_material")) s.idler_material = kv.get("idler_material");
  if (kv.has("mismatch")) s.mismatch = parse_mismatch_mode(kv.get("mismatch"));
  if (kv.has("propagation_phase")) s.propagation_phase = on_off(kv.get("propagation_phase"), "propagation_phase");
  if (kv.has("lambda_p_nm")) s.lambda_p = positive(kv, "lambda_p_nm") * 1e-9;
  if (kv.has("lambda_s_nm")) s.lambda_s = positive(kv, "lambda_s_nm") * 1e-9;
  if (kv.has("crystal_length_mm")) s.crystal_length = positive(kv, "crystal_length_mm") * 1e-3;
  if (kv.has("poling_period_nm")) {
    s.poling_period = finite(kv, "poling_period_nm") * 1e-9;
    if (s.poling_period < 0.0) throw ConfigError("poling_period_nm must be >= 0");
  }
  if (kv.has("poling_order")) s.poling_order = kv.get_int("poling_order");
  if (kv.has("pump_phase_rad")) s.pump_phase = finite(kv, "pump_phase_rad");
  if (kv.has("gains")) {
    s.gains.clear();
    for (const auto& item : kv.get_list("gains")) s.gains.push_back(parse_double(item, "gains"));
  }
  if (kv.has("phase")) s.phase = parse_phase(kv.get("phase"));
  if (kv.has("phi_sum_rad")) s.phi_sum = finite(kv, "phi_sum_rad");
  if (kv.has("delay_ps")) s.delay = finite(kv, "delay_ps") * 1e-12;
  if (kv.has("grid_points")) s.grid_points = count(kv, "grid_points");
  if (kv.has("grid_extent_bw")) {
    s.grid_extent = finite(kv, "grid_extent_bw");
    if (s.grid_extent < 0.0) throw ConfigError("grid_extent_bw must be >= 0");
  }
  if (kv.has("t_d_points")) s.t_d_points = count(kv, "t_d_points");
  if (kv.has("t_d_min_tau")) s.t_d_min = positive(kv, "t_d_min_tau");
  if (kv.has("t_d_max_tau")) s.t_d_max = positive(kv, "t_d_max_tau");
  if (kv.has("noise_cutoff_bw")) s.noise_cutoff = positive(kv, "noise_cutoff_bw");
  if (kv.has("correlation_cutoff_bw")) s.correlation_cutoff = positive(kv, "correlation_cutoff_bw");
  if (kv.has("rel_tol")) s.rel_tol = positive(kv, "rel_tol");
  if (kv.has("threads")) s.threads = static_cast<unsigned>(count(kv, "threads"));
  if (kv.has("output_dir")) s.output_dir = kv.get("output_dir");
  s.validate();
  return s;
}

Scenario Scenario::load(const std::filesystem::path& path,
                        const std::vector<std::pair<std::string, std::string>>& overrides) {
  auto kv = path.empty() ? KeyValueFile::parse("", "<defaults>") : KeyValueFile::load(path);
  for (const auto& [k, v] : overrides) kv.set(k, v);
  return from_keyvalue(kv);
}

std::vector<std::pair<std::string, std::string>> Scenario::entries() const {
  std::string gain_list;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (i) gain_list += ", ";
    gain_list += format_double(gains[i]);
  }
  std::vector<std::pair<std::string, std::string>> out = {
      {"format_version", "1"},
      {"material", material},
      {"pump_material", pump_material.empty() ? material : pump_material},
      {"signal_material", signal_material.empty() ? material : signal_material},
      {"idler_material", idler_material.empty() ? material : idler_material},
      {"geometry", std::string(to_string(geometry))},
      {"mismatch", std::string(to_string(mismatch))},
      {"propagation_phase", propagation_phase ? "on" : "off"},
      {"lambda_p_nm", format_double(lambda_p * 1e9)},
      {"lambda_s_nm", format_double(lambda_s * 1e9)},
      {"crystal_length_mm", format_double(crystal_length * 1e3)},
      {"poling_period_nm", format_double(poling_period * 1e9)},
      {"poling_order", std::to_string(poling_order)},
      {"pump_phase_rad", format_double(pump_phase)},
      {"gains", gain_list},
      {"phase", phase == PhaseMode::optimal ? "optimal" : "fixed"},
      {"delay_ps", format_double(delay * 1e12)},
      {"grid_points", std::to_string(grid_points)},
      {"grid_extent_bw", format_double(grid_extent)},
      {"t_d_points", std::to_string(t_d_points)},
      {"t_d_min_tau", format_double(t_d_min)},
      {"t_d_max_tau", format_double(t_d_max)},
      {"noise_cutoff_bw", format_double(noise_cutoff)},
      {"correlation_cutoff_bw", format_double(correlation_cutoff)},
      {"rel_tol", format_double(rel_tol)},
      {"threads", std::to_string(threads)},
      {"output_dir", output_dir.string()},
  };
  // Left out when unset: fixed mode then takes 2 theta(0) from the coefficients.
  if (phi_sum) out.insert(out.begin() + 16, {"phi_sum_rad", format_double(*phi_sum)});
  return out;
}

void Scenario::validate() const {
  if (material.empty()) throw ConfigError("material must not be empty");
  if (!(lambda_s > lambda_p)) throw ConfigError("lambda_s_nm must exceed lambda_p_nm");
  if (poling_order < 1 || poling_order % 2 == 0) throw ConfigError("poling_order must be a positive odd integer");
  for (double g : gains) {
    if (!std::isfinite(g) || g < 0.0) throw ConfigError("gains must be finite and non-negative");
    if (geometry == Geometry::counter && !(g < std::numbers::pi / 2.0)) {
      throw ConfigError("counter-propagating gains must stay below the threshold pi/2");
    }
  }
  if (grid_points == 1) throw ConfigError("grid_points must be 0 (default) or >= 2");
  if (t_d_points < 2) throw ConfigError("t_d_points must be >= 2");
  if (!(t_d_max > t_d_min)) throw ConfigError("t_d_max_tau must exceed t_d_min_tau");
  if (rel_tol >= 1e-2) throw ConfigError("rel_tol must be below 1e-2");
}

Media Scenario::media() const {
  const auto base = find_material(material);
  auto pick = [&](const std::string& name) { return name.empty() ? base : find_material(name); };
  return {pick(pump_material), pick(signal_material), pick(idler_material)};
}

InteractionConfig Scenario::interaction(double gain) const {
  auto c = InteractionConfig::from_pump_signal(lambda_p, lambda_s, crystal_length, geometry);
  c.poling_period = poling_period;
  c.poling_order = poling_order;
  c.gain = gain;
  c.pump_phase = pump_phase;
  return c;
}

InteractionConfig Scenario::solved_interaction(const Media& m, double gain) const {
  auto c = interaction(gain);
  if (c.poling_period == 0.0) c.poling_period = qpm_poling_period(c, m);
  return c;
}

PhaseMismatch Scenario::phase_mismatch(const Media& m) const {
  auto p = PhaseMismatch::make(mismatch, solved_interaction(m), m);
  if (!propagation_phase) p.without_propagation_phase();
  return p;
}

PhaseChoice Scenario::phase_choice() const { return {phase, phi_sum, delay}; }

NoiseOptions Scenario::noise_options() const {
  NoiseOptions o;
  o.rel_tol = rel_tol;
  o.cutoff = noise_cutoff;
  o.threads = threads;
  return o;
}

CorrelationOptions Scenario::correlation_options() const {
  CorrelationOptions o;
  o.rel_tol = rel_tol;
  o.cutoff = correlation_cutoff;
  o.threads = threads;
  return o;
}

}  // namespace mopo
