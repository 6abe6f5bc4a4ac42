#include "mopo/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"
#include "mopo/numerics.hpp"

namespace mopo {

void SpectrumSeries::add(std::string name, std::vector<double> values) {
  if (values.size() != omega.size()) throw Error("SpectrumSeries: column length mismatch");
  for (auto& [n, v] : columns) {
    if (n == name) {
      v = std::move(values);
      return;
    }
  }
  columns.emplace_back(std::move(name), std::move(values));
}

bool SpectrumSeries::has(std::string_view name) const {
  return std::any_of(columns.begin(), columns.end(), [&](const auto& c) { return c.first == name; });
}

const std::vector<double>& SpectrumSeries::get(std::string_view name) const {
  for (const auto& [n, v] : columns) {
    if (n == name) return v;
  }
  throw Error("SpectrumSeries: no column '" + std::string(name) + "'");
}

SpectrumSeries make_series(std::span<const double> grid, double normalization) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("frequency grid must be strictly increasing");
  }
  SpectrumSeries s;
  s.omega.assign(grid.begin(), grid.end());
  s.normalization = normalization;
  s.omega_normalized.reserve(grid.size());
  for (double w : grid) s.omega_normalized.push_back(w / normalization);
  return s;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points < 2 || !(hi > lo)) throw ConfigError("uniform_grid: need hi > lo and >= 2 points");
  std::vector<double> g(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

std::vector<double> default_grid(const CoefficientModel& model) {
  if (model.geometry == Geometry::counter) {
    return uniform_grid(-6.0 * model.bandwidth, 6.0 * model.bandwidth, 2048);
  }
  return uniform_grid(-3.0 * model.bandwidth, 3.0 * model.bandwidth, 4096);
}

SpectrumSeries intensity_spectrum(std::span<const double> grid, const CoefficientModel& model) {
  auto series = make_series(grid, model.bandwidth);
  std::vector<double> raw;
  raw.reserve(grid.size());
  for (double w : grid) raw.push_back(std::norm(model(w).v_s));
  const double peak = raw.empty() ? 0.0 : *std::max_element(raw.begin(), raw.end());
  std::vector<double> normalized(raw.size(), 0.0);
  if (peak > 0.0) {
    std::transform(raw.begin(), raw.end(), normalized.begin(), [&](double v) { return v / peak; });
  }
  series.add("intensity", std::move(raw));
  series.add("intensity_normalized", std::move(normalized));
  return series;
}

double reference_phase_sum(const CoefficientModel& model) {
  const auto c = model(0.0);
  const cplx product = c.u_s * c.v_i;
  return std::abs(product) > 0.0 ? std::arg(product) : 0.0;
}

namespace {

// |u - conj(v) e^{i psi}|^2
double sideband_noise(const cplx& u, const cplx& v, double psi) {
  return std::norm(u - std::conj(v) * std::polar(1.0, psi));
}

}  // namespace

SqueezingPoint squeezing_at(double omega, const CoefficientModel& model, const PhaseChoice& phase,
                            std::optional<double> resolved_phi) {
  const auto plus = model(omega);
  const auto minus = model(-omega);
  const double shift = omega * phase.delay;

  SqueezingPoint out;
  if (phase.mode == PhaseMode::fixed) {
    out.phi_sum = resolved_phi ? *resolved_phi
                               : (phase.phi_sum ? *phase.phi_sum : reference_phase_sum(model));
  } else {
    // sinh(2r) e^{2i theta} = 2 u_s v_i for each sideband.
    const cplx pointer = 2.0 * plus.u_s * plus.v_i * std::polar(1.0, -shift) +
                         2.0 * minus.u_s * minus.v_i * std::polar(1.0, shift);
    const double scale = std::abs(plus.u_s) * std::abs(plus.v_i) + std::abs(minus.u_s) * std::abs(minus.v_i);
    if (std::abs(pointer) <= 1e-12 * std::max(1.0, scale)) {
      out.angle_undefined = true;
      out.phi_sum = 0.0;
    } else {
      out.phi_sum = std::arg(pointer);
    }
  }
  out.sigma = 0.5 * (sideband_noise(plus.u_s, plus.v_i, out.phi_sum + shift) +
                     sideband_noise(minus.u_s, minus.v_i, out.phi_sum - shift));
  return out;
}

SpectrumSeries squeezing_spectrum(std::span<const double> grid, const CoefficientModel& model,
                                  const PhaseChoice& phase) {
  auto series = make_series(grid, model.bandwidth);
  std::optional<double> phi;
  if (phase.mode == PhaseMode::fixed) phi = phase.phi_sum ? *phase.phi_sum : reference_phase_sum(model);

  std::vector<double> sigma;
  std::vector<double> angle;
  sigma.reserve(grid.size());
  angle.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = squeezing_at(grid[i], model, phase, phi);
    sigma.push_back(p.sigma);
    angle.push_back(p.phi_sum);
    if (p.angle_undefined) series.flagged.push_back(i);
  }
  series.add("sigma", std::move(sigma));
  if (phase.mode == PhaseMode::optimal) series.add("phi_sum", std::move(angle));
  return series;
}

FixedAngleIdentity fixed_angle_identity(double r, double theta, double theta0) {
  if (r < 0.0) throw ConfigError("fixed_angle_identity: r must be non-negative");
  FixedAngleIdentity out;
  const double s = std::sin(theta - theta0);
  out.squeezed_part = std::exp(-2.0 * r);
  out.excess_part = 2.0 * std::sinh(2.0 * r) * s * s;
  out.sigma = out.squeezed_part + out.excess_part;
  return out;
}

SqueezingBandwidth squeezing_bandwidth(const CoefficientModel& model, const PhaseChoice& phase,
                                       std::span<const double> grid) {
  if (phase.mode != PhaseMode::fixed) {
    throw ConfigError("squeezing_bandwidth: requires a fixed phase choice");
  }
  const double phi = phase.phi_sum ? *phase.phi_sum : reference_phase_sum(model);
  auto excess = [&](double w) { return squeezing_at(w, model, phase, phi).sigma - 1.0; };

  std::vector<double> positive;
  for (double w : grid) {
    if (w > 0.0) positive.push_back(w);
  }
  std::sort(positive.begin(), positive.end());

  constexpr double kBelow = -1e-12;
  bool seen_below = false;
  double last_below = 0.0;
  for (double w : positive) {
    const double e = excess(w);
    if (e < kBelow) {
      seen_below = true;
      last_below = w;
    } else if (seen_below && e >= 0.0) {
      SqueezingBandwidth out;
      out.omega = find_root(excess, last_below, w);
      if (model.geometry == Geometry::counter && model.linearized && model.gain < std::numbers::pi) {
        out.closed_form = model.omega_gvs * std::sqrt(std::numbers::pi * std::numbers::pi -
                                                      model.gain * model.gain);
      }
      return out;
    }
  }
  throw NoCrossing("squeezing_bandwidth: Sigma does not cross the shot-noise level on the grid");
}

}  // namespace mopo
