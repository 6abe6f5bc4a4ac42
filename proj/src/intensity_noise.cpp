#include "mopo/intensity_noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mopo/errors.hpp"

namespace mopo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Panel boundaries every `spacing` within `core` of each center, then
// geometrically wider panels out to [a, b].
std::vector<double> graded_seeds(std::span<const double> centers, double a, double b, double spacing,
                                 double core, std::span<const double> extra = {}) {
  std::vector<double> seeds(extra.begin(), extra.end());
  for (double c : centers) {
    seeds.push_back(c);
    double step = spacing;
    double offset = 0.0;
    while (true) {
      offset += step;
      if (c + offset >= b && c - offset <= a) break;
      seeds.push_back(c + offset);
      seeds.push_back(c - offset);
      if (offset >= core) step *= 1.25;
    }
  }
  std::erase_if(seeds, [&](double s) { return !(s > a && s < b); });
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

// Half-width of the near-threshold Lorentzian in bandwidth units, or 0.
double pole_width(const CoefficientModel& model) {
  if (model.geometry != Geometry::counter) return 0.0;
  const double eps = std::numbers::pi / 2.0 - model.gain;
  const double width = model.gain * std::sin(eps) * model.omega_gvs / model.bandwidth;
  return width < 0.5 ? width : 0.0;
}

void add_pole_seeds(std::vector<double>& extra, double center, double width) {
  if (width <= 0.0) return;
  extra.push_back(center - width);
  extra.push_back(center + width);
}

double resolve_shot_noise(const CoefficientModel& model, const NoiseOptions& opts,
                          std::optional<double> shot_noise) {
  return shot_noise ? *shot_noise : 2.0 * mean_intensity(model, opts);
}

}  // namespace

double mean_intensity(const CoefficientModel& model, const NoiseOptions& opts) {
  if (model.gain == 0.0) return 0.0;
  const double bw = model.bandwidth;
  const double cut = opts.cutoff;
  std::vector<double> extra;
  add_pole_seeds(extra, 0.0, pole_width(model));
  const double centers[] = {0.0};

  QuadratureOptions q;
  q.rel_tol = opts.rel_tol;
  q.abs_tol = 0.0;
  q.seeds = graded_seeds(centers, -cut, cut, 2.0, 10.0, extra);
  auto f = [&](double u) { return std::norm(model(u * bw).v_s); };
  return integrate(f, -cut, cut, q).value * bw / kTwoPi;
}

double mean_intensity_spontaneous(double gain, double tau_gvs) { return gain * gain / (2.0 * tau_gvs); }

double total_intensity_near_threshold(double gain, double omega_gvs) {
  return gain * omega_gvs / std::sin(std::numbers::pi / 2.0 - gain);
}

namespace {

double vminus_impl(double omega, const CoefficientModel& model, const NoiseOptions& opts,
                   double shot_noise) {
  const double bw = model.bandwidth;
  const double half = 0.5 * omega / bw;
  const double lo = -std::abs(half) - opts.cutoff;
  const double hi = std::abs(half) + opts.cutoff;
  std::vector<double> extra;
  const double width = pole_width(model);
  add_pole_seeds(extra, -half, width);
  add_pole_seeds(extra, half, width);
  const double centers[] = {-half, half};

  QuadratureOptions q;
  q.rel_tol = opts.rel_tol;
  q.abs_tol = 1e-14 * shot_noise * kTwoPi / bw;
  q.seeds = graded_seeds(centers, lo, hi, 2.0, 10.0, extra);
  // W' = x - W/2: c1 = c(W'), c2 = c(W + W'); c.v_i holds V_i at the negated offset.
  auto f = [&](double x) {
    const auto c1 = model((x - half) * bw);
    const auto c2 = model((x + half) * bw);
    return std::norm(c1.u_s * std::conj(c2.v_i) - c2.u_s * std::conj(c1.v_i));
  };
  return integrate(f, lo, hi, q).value * bw / kTwoPi;
}

}  // namespace

double vminus_at(double omega, const CoefficientModel& model, const NoiseOptions& opts) {
  if (model.gain == 0.0) return 0.0;
  return vminus_impl(omega, model, opts, 2.0 * mean_intensity(model, opts));
}

SpectrumSeries vminus_spectrum(std::span<const double> grid, const CoefficientModel& model,
                               const NoiseOptions& opts, std::optional<double> shot_noise) {
  auto series = make_series(grid, model.bandwidth);
  const double sn = resolve_shot_noise(model, opts, shot_noise);
  std::vector<double> raw(grid.size(), 0.0);
  std::vector<double> normalized(grid.size(), 0.0);
  if (sn > 0.0) {
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
          raw[i] = vminus_impl(grid[i], model, opts, sn);
          normalized[i] = raw[i] / sn;
        },
        opts.threads);
  }
  series.add("vminus", std::move(raw));
  series.add("vminus_normalized", std::move(normalized));
  return series;
}

double vminus_spontaneous(double x) { return 1.0 - sinc(x); }

double vminus_near_threshold(double x, double gain) {
  const double gamma = std::hypot(gain, x);
  const double s = gain * std::sin(gamma);
  return (gamma - s) / (gamma + s);
}

double near_threshold_lorentzian(double x, double gain) {
  const double se = std::sin(std::numbers::pi / 2.0 - gain);
  return (gain * gain + x * x) / (gain * gain * se * se + x * x);
}

double photon_number_variance(double t_d, const CoefficientModel& model, const NoiseOptions& opts,
                              std::optional<double> shot_noise) {
  if (!(t_d > 0.0)) throw ConfigError("photon_number_variance: T_d must be positive");
  const double sn = resolve_shot_noise(model, opts, shot_noise);
  if (sn == 0.0) return 1.0;

  const double bw = model.bandwidth;
  const double scaled = t_d * bw;  // window in bandwidth units
  const double upper = std::max(30.0, 20.0 / scaled);
  // Spans at most three zeros of the window per seeded panel.
  const double spacing = std::min(2.0, 3.0 * kTwoPi / scaled);
  std::vector<double> extra;
  add_pole_seeds(extra, 0.0, pole_width(model));

  QuadratureOptions q;
  q.rel_tol = opts.outer_rel_tol;
  q.abs_tol = 1e-9;
  const double centers[] = {0.0};
  q.seeds = graded_seeds(centers, 0.0, upper, spacing, 30.0, extra);
  // Window integrates to 2pi / T_d over the full line, so the shot-noise
  // part contributes exactly 1.
  auto f = [&](double u) {
    const double w = sinc(0.5 * scaled * u);
    return w * w * (vminus_impl(u * bw, model, opts, sn) / sn - 1.0);
  };
  return 1.0 + scaled / std::numbers::pi * integrate(f, 0.0, upper, q).value;
}

std::vector<double> photon_number_variance(std::span<const double> t_d, const CoefficientModel& model,
                                           const NoiseOptions& opts, std::optional<double> shot_noise) {
  const double sn = resolve_shot_noise(model, opts, shot_noise);
  std::vector<double> out(t_d.size(), 1.0);
  parallel_for(
      t_d.size(), [&](std::size_t i) { out[i] = photon_number_variance(t_d[i], model, opts, sn); },
      opts.threads);
  return out;
}

double variance_spontaneous(double t_d, double tau_gvs) {
  if (!(t_d > 0.0) || !(tau_gvs > 0.0)) throw ConfigError("variance_spontaneous: need T_d, tau > 0");
  return t_d <= tau_gvs ? 1.0 - t_d / (2.0 * tau_gvs) : tau_gvs / (2.0 * t_d);
}

std::vector<double> default_detection_times(double tau) {
  constexpr std::size_t kPoints = 40;
  std::vector<double> out(kPoints);
  const double lo = std::log(0.05);
  const double hi = std::log(50.0);
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kPoints - 1);
    out[i] = tau * std::exp(t);
  }
  out.front() = 0.05 * tau;
  out.back() = 50.0 * tau;
  return out;
}

namespace {

// (1/2pi) * integral e^{i W tau} f(W) dW with f sampled through x = W / bw.
// `floor` sets the absolute tolerance so points where the transform is
// near zero still converge.
template <typename F>
cplx fourier_point(const F& f, double tau, double bw, double cutoff, double rel_tol, double floor) {
  const double phase_rate = tau * bw;
  const double spacing = phase_rate == 0.0 ? 2.0 : std::min(2.0, 3.0 * kTwoPi / std::abs(phase_rate));
  QuadratureOptions q;
  q.rel_tol = rel_tol;
  q.abs_tol = floor;
  const double centers[] = {0.0};
  q.seeds = graded_seeds(centers, -cutoff, cutoff, spacing, 10.0);
  auto integrand = [&](double x) -> cplx { return std::polar(1.0, phase_rate * x) * cplx(f(x)); };
  return integrate(integrand, -cutoff, cutoff, q).value * bw / kTwoPi;
}

// Integral of |f| over the cutoff domain, used as the scale of the
// absolute tolerance.
template <typename F>
double l1_norm(const F& f, double cutoff, double rel_tol) {
  QuadratureOptions q;
  q.rel_tol = rel_tol;
  q.abs_tol = 0.0;
  const double centers[] = {0.0};
  q.seeds = graded_seeds(centers, -cutoff, cutoff, 2.0, 10.0);
  return integrate([&](double x) { return std::abs(f(x)); }, -cutoff, cutoff, q).value;
}

struct CorrelationKernels {
  const CoefficientModel& model;
  double bw;
  double self_floor = 0.0;
  double cross_floor = 0.0;
  double cutoff;
  double rel_tol;

  CorrelationKernels(const CoefficientModel& m, const CorrelationOptions& opts)
      : model(m), bw(m.bandwidth), cutoff(opts.cutoff), rel_tol(opts.rel_tol) {
    self_floor = rel_tol * l1_norm([&](double x) { return self(x); }, cutoff, 1e-4);
    cross_floor = rel_tol * l1_norm([&](double x) { return std::abs(cross(x)); }, cutoff, 1e-4);
  }

  double self(double x) const { return std::norm(model(x * bw).v_s); }
  cplx cross(double x) const {
    const auto c = model(x * bw);
    return c.u_s * c.v_i;
  }

  cplx self_at(double tau) const {
    return fourier_point([&](double x) { return self(x); }, tau, bw, cutoff, rel_tol, self_floor);
  }
  cplx cross_at(double tau) const {
    return fourier_point([&](double x) { return cross(x); }, tau, bw, cutoff, rel_tol, cross_floor);
  }
  double smooth_at(double tau) const {
    return 2.0 * std::norm(self_at(tau)) - std::norm(cross_at(tau)) - std::norm(cross_at(-tau));
  }
};

}  // namespace

FieldCorrelations field_correlations(std::span<const double> tau_grid, const CoefficientModel& model,
                                     const CorrelationOptions& opts) {
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) throw ConfigError("field_correlations: tau grid must increase");
  }
  FieldCorrelations out;
  out.tau.assign(tau_grid.begin(), tau_grid.end());
  out.self_corr.assign(tau_grid.size(), cplx{});
  out.cross_corr.assign(tau_grid.size(), cplx{});
  if (model.gain == 0.0) return out;

  const CorrelationKernels kernels(model, opts);
  parallel_for(
      tau_grid.size(),
      [&](std::size_t i) {
        out.self_corr[i] = kernels.self_at(tau_grid[i]);
        out.cross_corr[i] = kernels.cross_at(tau_grid[i]);
      },
      opts.threads);
  return out;
}

double triangle_limit(double t, double gain, double tau_gvs) {
  const double x = std::abs(t) / (2.0 * tau_gvs);
  return x < 1.0 ? gain * gain / (2.0 * tau_gvs) * (1.0 - x) : 0.0;
}

double rect_limit(double t, double gain, double tau_gvs) {
  return std::abs(t) < tau_gvs ? gain / (2.0 * tau_gvs) : 0.0;
}

IntensityCorrelation intensity_correlation_difference(const FieldCorrelations& fields,
                                                      double mean_intensity) {
  const std::size_t n = fields.tau.size();
  const double scale = n == 0 ? 0.0 : std::max(std::abs(fields.tau.front()), std::abs(fields.tau.back()));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(fields.tau[i] + fields.tau[n - 1 - i]) > 1e-9 * scale) {
      throw ConfigError("intensity_correlation_difference: tau grid must be symmetric about 0");
    }
  }
  IntensityCorrelation out;
  out.tau = fields.tau;
  out.delta_weight = 2.0 * mean_intensity;
  out.smooth.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.smooth[i] = 2.0 * std::norm(fields.self_corr[i]) - std::norm(fields.cross_corr[i]) -
                    std::norm(fields.cross_corr[n - 1 - i]);
  }
  return out;
}

double intensity_correlation_smooth_at(double tau, const CoefficientModel& model,
                                       const CorrelationOptions& opts) {
  if (model.gain == 0.0) return 0.0;
  return CorrelationKernels(model, opts).smooth_at(tau);
}

double photon_number_variance_time_domain(double t_d, const CoefficientModel& model,
                                          const CorrelationOptions& opts,
                                          std::optional<double> shot_noise) {
  if (!(t_d > 0.0)) throw ConfigError("photon_number_variance_time_domain: T_d must be positive");
  if (model.gain == 0.0) return 1.0;
  double sn = 0.0;
  if (shot_noise) {
    sn = *shot_noise;
  } else {
    NoiseOptions n;
    n.rel_tol = opts.rel_tol;
    n.cutoff = opts.cutoff;
    sn = 2.0 * mean_intensity(model, n);
  }
  const CorrelationKernels kernels(model, opts);
  const double tau = 1.0 / model.omega_gvs;

  QuadratureOptions q;
  q.rel_tol = 1e-4;
  q.abs_tol = 0.0;
  // The smooth part has kinks and steps at tau_gvs and 2 tau_gvs.
  q.seeds = {tau, 2.0 * tau};
  q.max_panels = 4000;
  // Even integrand: fold onto [0, T].
  auto f = [&](double s) { return (t_d - s) * kernels.smooth_at(s); };
  const double folded = 2.0 * integrate(f, 0.0, t_d, q).value;
  return 1.0 + folded / (sn * t_d);
}

RegimeTags regime_tags(const CoefficientModel& model) {
  RegimeTags tags;
  tags.spontaneous_ok = model.gain <= 0.2;
  tags.near_threshold_ok = model.geometry == Geometry::counter && model.gain >= 1.4;
  return tags;
}

NoiseReport noise_report(std::span<const double> grid, std::span<const double> t_d,
                         const CoefficientModel& model, const NoiseOptions& opts) {
  NoiseReport report;
  report.shot_noise = 2.0 * mean_intensity(model, opts);
  report.vminus = vminus_spectrum(grid, model, opts, report.shot_noise);
  const auto ratios = photon_number_variance(t_d, model, opts, report.shot_noise);
  report.variance_curve.reserve(t_d.size());
  for (std::size_t i = 0; i < t_d.size(); ++i) report.variance_curve.emplace_back(t_d[i], ratios[i]);
  report.regime_tags = regime_tags(model);
  return report;
}

}  // namespace mopo
