#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature, Fourier
// integrals evaluated through it, bisection and Richardson-extrapolated
// central differences.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

#include "mopo/errors.hpp"

namespace mopo {

using cplx = std::complex<double>;

/// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// sinh(x)/x with value 1 at x = 0.
inline double sinhc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

// 21-point Kronrod nodes on [0, 1] (symmetric), with the embedded 10-point
// Gauss rule living on the odd-indexed nodes.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452338, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <typename T>
Panel<T> kronrod21(const auto& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kKronrodWeights[10];
  T gauss{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(centre - dx) + f(centre + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

}  // namespace detail

struct QuadratureOptions {
  double rel_tol = 1e-6;
  double abs_tol = 1e-14;
  std::size_t max_panels = 100000;
  /// Interior points that are forced to be panel boundaries.
  std::vector<double> seeds{};
};

template <typename T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t panels_used = 0;
};

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|). Ties are broken by panel
/// position so the result depends only on the inputs. Throws
/// QuadratureFailure when the panel budget runs out or a panel can no longer
/// be split in floating point.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadratureOptions& opts = {})
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  using Panel = detail::Panel<T>;
  if (!(a < b)) {
    if (a == b) return {};
    throw QuadratureFailure("integrate: empty or reversed interval");
  }

  std::vector<double> edges{a};
  {
    std::vector<double> seeds = opts.seeds;
    std::sort(seeds.begin(), seeds.end());
    for (double s : seeds) {
      if (s > edges.back() && s < b) edges.push_back(s);
    }
    edges.push_back(b);
  }

  auto worse = [](const Panel& l, const Panel& r) {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;
  };
  std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> queue(worse);
  T total{};
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = detail::kronrod21<T>(f, edges[i], edges[i + 1]);
    total += p.value;
    total_error += p.error;
    queue.push(p);
  }
  std::size_t panels = queue.size();

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total)); };
  auto finite = [&] { return std::isfinite(total_error) && std::isfinite(detail::magnitude(total)); };
  while (!finite() || total_error > tolerance()) {
    if (panels >= opts.max_panels) {
      throw QuadratureFailure("integrate: panel budget exhausted");
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureFailure("integrate: panel cannot be subdivided further");
    }
    if (!std::isfinite(worst.error) || !std::isfinite(detail::magnitude(worst.value))) {
      throw QuadratureFailure("integrate: integrand is not finite");
    }
    Panel left = detail::kronrod21<T>(f, worst.a, mid);
    Panel right = detail::kronrod21<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Re-sum from the final panel set so the reported value carries no
  // cancellation residue from the running updates.
  std::vector<Panel> final_panels;
  final_panels.reserve(queue.size());
  while (!queue.empty()) {
    final_panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(final_panels.begin(), final_panels.end(),
            [](const Panel& l, const Panel& r) { return l.a < r.a; });
  T value{};
  double error = 0.0;
  for (const auto& p : final_panels) {
    value += p.value;
    error += p.error;
  }
  return {value, error, panels};
}

/// Evaluates (1/2pi) * integral over [-cutoff, cutoff] of exp(i*w*tau) f(w) dw
/// for every tau in the grid.
template <typename F>
std::vector<cplx> fourier_series(const F& f, std::span<const double> tau_grid, double cutoff,
                                 const QuadratureOptions& opts = {}) {
  std::vector<cplx> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    auto integrand = [&](double w) -> cplx { return std::polar(1.0, w * tau) * cplx(f(w)); };
    out.push_back(integrate(integrand, -cutoff, cutoff, opts).value / (2.0 * std::numbers::pi));
  }
  return out;
}

/// Panel boundaries every `spacing` across [a, b] plus the given extra
/// points, sorted. Keeps wide oscillatory integrands from being judged on a
/// single coarse panel.
std::vector<double> lattice_seeds(double a, double b, double spacing,
                                  std::span<const double> extra = {});

/// Calls body(i) once for every i in [0, n) on up to `threads` workers
/// (0 = hardware concurrency). Bodies must write only to their own slot.
/// If any body throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

/// Bisection on a sign-changing bracket. Stops when the bracket has shrunk
/// to 1e-12 of its initial width or after 80 halvings.
double find_root(const std::function<double(double)>& f, double a, double b);

struct Derivatives {
  double first = 0.0;
  double second = 0.0;
  double first_rel_error = 0.0;
  double second_rel_error = 0.0;
  double first_abs_error = 0.0;
  double second_abs_error = 0.0;
};

/// Central differences of f at x with one Richardson halving. `step1` is the
/// step for the first derivative and `step2` for the second.
Derivatives central_derivatives(const std::function<double(double)>& f, double x, double step1,
                                double step2);

}  // namespace mopo
