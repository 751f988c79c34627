#include "ept/patch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stats.hpp"

namespace ept {
namespace {

double oval_height(double gamma, int tau, std::ptrdiff_t offset) {
  const double k = static_cast<double>(offset);
  const double radicand = 0.25 * tau * tau - k * k;
  return radicand > 0.0 ? gamma * std::sqrt(radicand) : 0.0;
}

// (max - min) + gamma*tau, which keeps range >= gamma*tau exact in floating
// point.
double rectangle_range(double lo, double hi, const PatchSpec& spec) {
  return (hi - lo) + spec.gamma * spec.tau;
}

Envelopes envelopes_at(std::span<const double> x, std::ptrdiff_t center,
                       const PatchSpec& spec) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const WindowIndex w = clamped_window(center, spec.tau, n);
  if (spec.shape == Shape::Rectangle) {
    const auto [lo, hi] =
        std::minmax_element(x.begin() + w.start, x.begin() + w.end());
    const double margin = 0.5 * spec.gamma * spec.tau;
    return {*lo - margin, *hi + margin};
  }
  Envelopes env{x[w.start], x[w.start]};
  bool first = true;
  for (std::ptrdiff_t j = w.start; j < w.end(); ++j) {
    const double height = oval_height(spec.gamma, spec.tau, j - center);
    const double lo = x[j] - height;
    const double hi = x[j] + height;
    if (first || lo < env.lower) env.lower = lo;
    if (first || hi > env.upper) env.upper = hi;
    first = false;
  }
  return env;
}

double stat_from_window(std::span<const double> window, const Envelopes& env,
                        const PatchSpec& spec, StatKind stat,
                        std::vector<double>& scratch) {
  switch (stat) {
    case StatKind::Ave: return detail::mean(window);
    case StatKind::MeanEnvelope:
      // Rectangle margins cancel; skipping them keeps the result bitwise
      // independent of gamma.
      if (spec.shape == Shape::Rectangle) {
        const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
        return 0.5 * (*lo + *hi);
      }
      return 0.5 * (env.lower + env.upper);
    case StatKind::Sd: return detail::sample_sd(window);
    case StatKind::Range:
      if (spec.shape == Shape::Rectangle) {
        const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
        return rectangle_range(*lo, *hi, spec);
      }
      return env.upper - env.lower;
    case StatKind::Median: return detail::median(window, scratch);
    case StatKind::Lower: return env.lower;
    case StatKind::Upper: return env.upper;
  }
  throw std::invalid_argument("unknown statistic");
}

bool needs_envelopes(StatKind stat) {
  return stat == StatKind::MeanEnvelope || stat == StatKind::Range ||
         stat == StatKind::Lower || stat == StatKind::Upper;
}

void check_center(std::ptrdiff_t center, std::size_t n) {
  if (center < 0 || static_cast<std::size_t>(center) >= n)
    throw std::invalid_argument("center index out of range");
}

}  // namespace

SlidingExtrema sliding_extrema(std::span<const double> x, int tau) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (tau < 1 || tau > n) throw std::invalid_argument("tau out of range");
  SlidingExtrema out{std::vector<double>(x.size()),
                     std::vector<double>(x.size())};
  // Window bounds are non-decreasing in the center, so each index enters and
  // leaves each monotonic queue once; a flat buffer of n slots with head and
  // tail cursors is enough.
  std::vector<std::ptrdiff_t> min_q(x.size());
  std::vector<std::ptrdiff_t> max_q(x.size());
  std::ptrdiff_t min_head = 0, min_tail = 0;
  std::ptrdiff_t max_head = 0, max_tail = 0;
  std::ptrdiff_t pushed = 0;
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const WindowIndex w = clamped_window(c, tau, n);
    for (; pushed < w.end(); ++pushed) {
      const double v = x[pushed];
      while (min_tail > min_head && x[min_q[min_tail - 1]] >= v) --min_tail;
      min_q[min_tail++] = pushed;
      while (max_tail > max_head && x[max_q[max_tail - 1]] <= v) --max_tail;
      max_q[max_tail++] = pushed;
    }
    while (min_q[min_head] < w.start) ++min_head;
    while (max_q[max_head] < w.start) ++max_head;
    out.min[c] = x[min_q[min_head]];
    out.max[c] = x[max_q[max_head]];
  }
  return out;
}

Envelopes envelopes(const Signal& signal, std::ptrdiff_t center,
                    const PatchSpec& spec) {
  spec.validate(signal.size());
  check_center(center, signal.size());
  return envelopes_at(signal.values(), center, spec);
}

double patch_stat(const Signal& signal, std::ptrdiff_t center,
                  const PatchSpec& spec, StatKind stat) {
  spec.validate(signal.size());
  check_center(center, signal.size());
  const auto x = signal.values();
  const WindowIndex w =
      clamped_window(center, spec.tau, static_cast<std::ptrdiff_t>(x.size()));
  const Envelopes env =
      needs_envelopes(stat) ? envelopes_at(x, center, spec) : Envelopes{};
  std::vector<double> scratch;
  return stat_from_window(x.subspan(w.start, w.len), env, spec, stat, scratch);
}

std::vector<double> patch_series(const Signal& signal, const PatchSpec& spec,
                                 StatKind stat) {
  return patch_series(signal.values(), spec, stat);
}

std::vector<double> patch_series(std::span<const double> x,
                                 const PatchSpec& spec, StatKind stat) {
  spec.validate(x.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());

  if (needs_envelopes(stat) && spec.shape == Shape::Rectangle) {
    const SlidingExtrema ext = sliding_extrema(x, spec.tau);
    const double margin = 0.5 * spec.gamma * spec.tau;
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const Envelopes env{ext.min[c] - margin, ext.max[c] + margin};
      switch (stat) {
        case StatKind::MeanEnvelope:
          out[c] = 0.5 * (ext.min[c] + ext.max[c]);
          break;
        case StatKind::Range:
          out[c] = rectangle_range(ext.min[c], ext.max[c], spec);
          break;
        case StatKind::Lower: out[c] = env.lower; break;
        default: out[c] = env.upper; break;
      }
    }
    return out;
  }

  std::vector<double> scratch;
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const WindowIndex w = clamped_window(c, spec.tau, n);
    const Envelopes env =
        needs_envelopes(stat) ? envelopes_at(x, c, spec) : Envelopes{};
    out[c] = stat_from_window(x.subspan(w.start, w.len), env, spec, stat, scratch);
  }
  return out;
}

}  // namespace ept
