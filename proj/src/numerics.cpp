#include "mopo/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mopo {

double find_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0)) {
    throw BadBracket("find_root: f(a) and f(b) do not have opposite signs");
  }
  const double width = std::abs(b - a);
  for (int i = 0; i < 80 && std::abs(b - a) > 1e-12 * width; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fa * fm < 0.0) {
      b = mid;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

namespace {

double relative_gap(double refined, double coarse) {
  const double scale = std::max(std::abs(refined), std::abs(coarse));
  if (scale == 0.0) return 0.0;
  return std::abs(refined - coarse) / scale;
}

}  // namespace

Derivatives central_derivatives(const std::function<double(double)>& f, double x, double step1,
                                double step2) {
  auto d1 = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  auto d2 = [&](double h) { return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h); };

  const double d1_coarse = d1(step1);
  const double d1_fine = d1(0.5 * step1);
  const double d1_rich = (4.0 * d1_fine - d1_coarse) / 3.0;

  const double d2_coarse = d2(step2);
  const double d2_fine = d2(0.5 * step2);
  const double d2_rich = (4.0 * d2_fine - d2_coarse) / 3.0;

  Derivatives out;
  out.first = d1_rich;
  out.second = d2_rich;
  out.first_rel_error = relative_gap(d1_rich, d1_fine);
  out.second_rel_error = relative_gap(d2_rich, d2_fine);
  out.first_abs_error = std::abs(d1_rich - d1_fine);
  out.second_abs_error = std::abs(d2_rich - d2_fine);
  return out;
}

std::vector<double> lattice_seeds(double a, double b, double spacing, std::span<const double> extra) {
  std::vector<double> seeds(extra.begin(), extra.end());
  if (spacing > 0.0 && b > a) {
    const auto count = static_cast<std::size_t>(std::ceil((b - a) / spacing));
    const double step = (b - a) / static_cast<double>(count);
    for (std::size_t i = 1; i < count; ++i) seeds.push_back(a + step * static_cast<double>(i));
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (n == 0) return;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_index = n;
  std::exception_ptr failure;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mopo
