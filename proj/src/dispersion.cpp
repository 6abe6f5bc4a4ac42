#include "mopo/dispersion.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <limits>
#include <numbers>

#include "mopo/errors.hpp"
#include "mopo/keyvalue.hpp"
#include "mopo/numerics.hpp"

#ifndef MOPO_DATA_DIR
#define MOPO_DATA_DIR "data/materials"
#endif

namespace mopo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Relative finite-difference steps in omega for k' and k''.
constexpr double kFirstDerivativeStep = 1e-5;
constexpr double kSecondDerivativeStep = 1e-3;
constexpr double kRichardsonTolerance = 1e-4;

double lambda_of(double omega) { return kTwoPi * kSpeedOfLight / omega; }

std::size_t expected_coefficients(IndexForm form) {
  switch (form) {
    case IndexForm::constant: return 1;
    case IndexForm::sellmeier_ir: return 4;
    case IndexForm::quadratic_omega: return 2;
    case IndexForm::sellmeier: return 0;  // odd count >= 3, checked separately
  }
  return 0;
}

}  // namespace

std::string_view to_string(Geometry g) { return g == Geometry::counter ? "counter" : "co"; }

std::string_view to_string(MismatchMode m) {
  return m == MismatchMode::exact ? "exact" : "linearized";
}

Geometry parse_geometry(std::string_view text) {
  if (text == "counter") return Geometry::counter;
  if (text == "co") return Geometry::co;
  throw ConfigError("geometry must be 'counter' or 'co', got '" + std::string(text) + "'");
}

MismatchMode parse_mismatch_mode(std::string_view text) {
  if (text == "exact") return MismatchMode::exact;
  if (text == "linearized") return MismatchMode::linearized;
  throw ConfigError("mismatch must be 'exact' or 'linearized', got '" + std::string(text) + "'");
}

std::string_view to_string(IndexForm f) {
  switch (f) {
    case IndexForm::constant: return "constant";
    case IndexForm::sellmeier: return "sellmeier";
    case IndexForm::sellmeier_ir: return "sellmeier-ir";
    case IndexForm::quadratic_omega: return "quadratic-omega";
  }
  return "?";
}

IndexForm parse_index_form(std::string_view text) {
  if (text == "constant") return IndexForm::constant;
  if (text == "sellmeier") return IndexForm::sellmeier;
  if (text == "sellmeier-ir") return IndexForm::sellmeier_ir;
  if (text == "quadratic-omega") return IndexForm::quadratic_omega;
  throw ConfigError("unknown form_id '" + std::string(text) + "'");
}

double MaterialDispersion::index(double lambda) const {
  if (!in_range(lambda)) {
    throw OutOfRange(name + ": wavelength " + std::to_string(lambda * 1e9) + " nm outside [" +
                     std::to_string(lambda_min * 1e9) + ", " + std::to_string(lambda_max * 1e9) +
                     "] nm");
  }
  const auto& c = coefficients;
  const double um = lambda * 1e6;
  const double l2 = um * um;
  switch (form) {
    case IndexForm::constant:
      return c[0];
    case IndexForm::sellmeier: {
      double n2 = c[0];
      for (std::size_t i = 1; i + 1 < c.size(); i += 2) n2 += c[i] * l2 / (l2 - c[i + 1]);
      return std::sqrt(n2);
    }
    case IndexForm::sellmeier_ir:
      return std::sqrt(c[0] + c[1] / (l2 - c[2] * c[2]) - c[3] * l2);
    case IndexForm::quadratic_omega: {
      const double omega = kTwoPi * kSpeedOfLight / lambda;
      return c[0] + c[1] * omega * omega;
    }
  }
  return 0.0;
}

MaterialDispersion constant_material(double n, double lambda_min, double lambda_max) {
  return {"constant-" + std::to_string(n), IndexForm::constant, {n}, lambda_min, lambda_max};
}

MaterialDispersion parse_material(std::string_view text) {
  const auto kv = KeyValueFile::parse(text, "<material>");
  kv.require_known({"format_version", "name", "form_id", "coefficients", "valid_range_nm"});
  if (kv.get_int("format_version") != 1) throw ConfigError("material: unsupported format_version");

  MaterialDispersion m;
  m.name = kv.get("name");
  m.form = parse_index_form(kv.get("form_id"));
  m.coefficients = kv.get_doubles("coefficients");
  const auto range = kv.get_doubles("valid_range_nm");
  if (range.size() != 2 || !(range[0] > 0.0) || !(range[0] < range[1])) {
    throw ConfigError("material: valid_range_nm must be two increasing positive numbers");
  }
  m.lambda_min = range[0] * 1e-9;
  m.lambda_max = range[1] * 1e-9;

  const auto n = m.coefficients.size();
  const bool count_ok = m.form == IndexForm::sellmeier ? (n >= 3 && n % 2 == 1)
                                                       : n == expected_coefficients(m.form);
  if (!count_ok) {
    throw ConfigError("material '" + m.name + "': wrong number of coefficients for form " +
                      std::string(to_string(m.form)));
  }
  return m;
}

MaterialDispersion load_material(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_material(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

MaterialDispersion find_material(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name_or_path)) return load_material(name_or_path);

  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("MOPO_MATERIAL_PATH")) {
    std::string_view list(env);
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto colon = list.find(':', start);
      const auto item = list.substr(start, colon == std::string_view::npos ? list.npos : colon - start);
      if (!item.empty()) dirs.emplace_back(item);
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
  }
  dirs.emplace_back(MOPO_DATA_DIR);
  for (const auto& dir : dirs) {
    const auto candidate = dir / (name_or_path + ".mat");
    if (fs::is_regular_file(candidate)) return load_material(candidate);
  }
  throw ConfigError("material '" + name_or_path + "' not found (searched MOPO_MATERIAL_PATH and " +
                    std::string(MOPO_DATA_DIR) + ")");
}

InteractionConfig InteractionConfig::from_pump_signal(double lambda_p, double lambda_s,
                                                      double crystal_length, Geometry geometry) {
  InteractionConfig c;
  c.lambda_p = lambda_p;
  c.lambda_s = lambda_s;
  c.lambda_i = 1.0 / (1.0 / lambda_p - 1.0 / lambda_s);
  c.crystal_length = crystal_length;
  c.geometry = geometry;
  return c;
}

double InteractionConfig::omega_p() const { return kTwoPi * kSpeedOfLight / lambda_p; }
double InteractionConfig::omega_s() const { return kTwoPi * kSpeedOfLight / lambda_s; }
double InteractionConfig::omega_i() const { return kTwoPi * kSpeedOfLight / lambda_i; }

double InteractionConfig::grating_wavenumber() const {
  return poling_period > 0.0 ? kTwoPi * poling_order / poling_period : 0.0;
}

void InteractionConfig::validate() const {
  if (!(lambda_p > 0.0 && lambda_s > 0.0 && lambda_i > 0.0)) {
    throw ConfigError("wavelengths must be positive");
  }
  const double residual = std::abs(1.0 / lambda_p - 1.0 / lambda_s - 1.0 / lambda_i) * lambda_p;
  if (residual > 1e-12) {
    throw ConfigError("energy conservation violated: 1/lambda_p != 1/lambda_s + 1/lambda_i");
  }
  if (poling_order < 1 || poling_order % 2 == 0) {
    throw ConfigError("poling_order must be an odd positive integer");
  }
  if (!(crystal_length > 0.0)) throw ConfigError("crystal_length must be positive");
  if (poling_period < 0.0) throw ConfigError("poling_period must be non-negative");
  if (!(gain >= 0.0)) throw ConfigError("gain must be non-negative");
  if (geometry == Geometry::counter && !(gain < std::numbers::pi / 2.0)) {
    throw ConfigError("counter-propagating gain must stay below threshold pi/2");
  }
}

double wavenumber(const MaterialDispersion& material, double omega) {
  if (!(omega > 0.0)) throw OutOfRange("wavenumber: frequency must be positive");
  return material.index(lambda_of(omega)) * omega / kSpeedOfLight;
}

GroupDerivatives group_derivatives(const MaterialDispersion& material, double omega) {
  const double step1 = kFirstDerivativeStep * omega;
  const double step2 = kSecondDerivativeStep * omega;
  const double margin = 5.0 * std::max(step1, step2);
  if (!material.in_range(lambda_of(omega + margin)) || !material.in_range(lambda_of(omega - margin))) {
    throw OutOfRange(material.name + ": derivative stencil leaves the valid range");
  }
  const auto d = central_derivatives([&](double w) { return wavenumber(material, w); }, omega,
                                     step1, step2);
  // k'' is measured against its natural scale k'/w so a dispersionless
  // medium (k'' = 0) does not trip the relative test.
  const double k2_scale = std::max(std::abs(d.second), std::abs(d.first) / omega);
  const double k2_error = k2_scale > 0.0 ? d.second_abs_error / k2_scale : 0.0;
  if (d.first_rel_error > kRichardsonTolerance || k2_error > kRichardsonTolerance) {
    throw NumericalInstability(material.name + ": Richardson estimates disagree");
  }
  return {d.first, d.second, d.first_rel_error, k2_error};
}

double qpm_poling_period(const InteractionConfig& config, const Media& media) {
  const double kp = wavenumber(media.pump, config.omega_p());
  const double ks = wavenumber(media.signal, config.omega_s());
  const double ki = wavenumber(media.idler, config.omega_i());
  // k_G enters the mismatch linearly, so the zero is available in closed form.
  const double kg = config.geometry == Geometry::counter ? kp + ki - ks : kp - ks - ki;
  if (!(kg > 0.0)) {
    throw NoSolution("qpm_poling_period: required grating vector is not positive");
  }
  return kTwoPi * config.poling_order / kg;
}

Timescales Timescales::from_taus(double tau_gvs, double tau_gvm, double tau_gvd) {
  auto inverse = [](double t) {
    return t == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(t);
  };
  return {tau_gvs, tau_gvm, tau_gvd, inverse(tau_gvs), inverse(tau_gvm), inverse(tau_gvd)};
}

Timescales timescales(const InteractionConfig& config, const Media& media) {
  const auto s = group_derivatives(media.signal, config.omega_s());
  const auto i = group_derivatives(media.idler, config.omega_i());
  const double half = 0.5 * config.crystal_length;
  const double gvd2 = 0.25 * config.crystal_length * (s.k2 + i.k2);
  if (gvd2 < 0.0) throw NumericalInstability("timescales: anomalous total dispersion");
  return Timescales::from_taus(half * (s.k1 + i.k1), half * (s.k1 - i.k1), std::sqrt(gvd2));
}

PhaseMismatch PhaseMismatch::linearized(Geometry geometry, const Timescales& scales,
                                        double crystal_length) {
  if (!(crystal_length > 0.0)) throw ConfigError("PhaseMismatch: crystal length must be positive");
  PhaseMismatch p;
  p.geometry_ = geometry;
  p.mode_ = MismatchMode::linearized;
  p.crystal_length_ = crystal_length;
  p.scales_ = scales;
  // Taylor terms consistent with the timescales; carrier wavenumbers stay 0.
  const double k1s = (scales.tau_gvs + scales.tau_gvm) / crystal_length;
  const double k1i = (scales.tau_gvs - scales.tau_gvm) / crystal_length;
  const double k2 = 2.0 * scales.tau_gvd * scales.tau_gvd / crystal_length;
  p.signal_ = {0.0, k1s, k2};
  p.idler_ = {0.0, k1i, k2};
  return p;
}

PhaseMismatch PhaseMismatch::linearized(const InteractionConfig& config, const Media& media) {
  PhaseMismatch p = exact(config, media);
  p.mode_ = MismatchMode::linearized;
  p.media_.reset();
  return p;
}

PhaseMismatch PhaseMismatch::exact(const InteractionConfig& config, const Media& media) {
  config.validate();
  PhaseMismatch p;
  p.geometry_ = config.geometry;
  p.mode_ = MismatchMode::exact;
  p.crystal_length_ = config.crystal_length;
  p.omega_s_ = config.omega_s();
  p.omega_i_ = config.omega_i();

  const auto ds = group_derivatives(media.signal, p.omega_s_);
  const auto di = group_derivatives(media.idler, p.omega_i_);
  p.signal_ = {wavenumber(media.signal, p.omega_s_), ds.k1, ds.k2};
  p.idler_ = {wavenumber(media.idler, p.omega_i_), di.k1, di.k2};
  p.pump_k_ = wavenumber(media.pump, config.omega_p());
  p.grating_k_ = config.poling_period > 0.0 ? config.grating_wavenumber()
                                            : kTwoPi * config.poling_order / qpm_poling_period(config, media);
  p.scales_ = timescales(config, media);
  p.residual_ = config.geometry == Geometry::counter
                    ? p.signal_.k0 - p.idler_.k0 - p.pump_k_ + p.grating_k_
                    : p.signal_.k0 + p.idler_.k0 - p.pump_k_ + p.grating_k_;
  p.media_ = media;
  return p;
}

PhaseMismatch PhaseMismatch::make(MismatchMode mode, const InteractionConfig& config,
                                  const Media& media) {
  return mode == MismatchMode::exact ? exact(config, media) : linearized(config, media);
}

MismatchSample PhaseMismatch::operator()(double omega) const {
  const double l = crystal_length_;
  MismatchSample out;
  if (mode_ == MismatchMode::exact) {
    const double ks = wavenumber(media_->signal, omega_s_ + omega);
    const double ki = wavenumber(media_->idler, omega_i_ - omega);
    if (geometry_ == Geometry::counter) {
      out.half_mismatch = 0.5 * l * (ks - ki - pump_k_ + grating_k_);
      if (keep_beta_) out.propagation_phase = 0.5 * l * ((ks - signal_.k0) + (ki - idler_.k0));
    } else {
      out.half_mismatch = 0.5 * l * (ks + ki - pump_k_ + grating_k_);
    }
    out.signal_phase = ks * l;
    out.idler_phase = ki * l;
    return out;
  }

  const double gvd = scales_.tau_gvd * scales_.tau_gvd * omega * omega;
  if (geometry_ == Geometry::counter) {
    out.half_mismatch = 0.5 * l * residual_ + scales_.tau_gvs * omega;
    if (keep_beta_) out.propagation_phase = scales_.tau_gvm * omega + gvd;
  } else {
    out.half_mismatch = 0.5 * l * residual_ + scales_.tau_gvm * omega + gvd;
  }
  out.signal_phase = signal_.at(omega) * l;
  out.idler_phase = idler_.at(-omega) * l;
  return out;
}

}  // namespace mopo
