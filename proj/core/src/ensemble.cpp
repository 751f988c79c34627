#include "ept/ensemble.hpp"

#include <stdexcept>

#include "stats.hpp"

namespace ept {
namespace {

// Shifted centers that leave [0, n) are dropped; at least the unshifted
// center always survives.
struct ShiftBounds {
  std::ptrdiff_t first;
  std::ptrdiff_t last;  // inclusive
};

ShiftBounds surviving_centers(std::ptrdiff_t center, int tau,
                              std::ptrdiff_t n) {
  const std::ptrdiff_t lo = center - (tau - 1) / 2;
  const std::ptrdiff_t hi = center + tau / 2;
  return {lo < 0 ? 0 : lo, hi >= n ? n - 1 : hi};
}

double combine(std::span<const double> values, Outer outer,
               std::vector<double>& scratch) {
  return outer == Outer::Mean ? detail::mean(values)
                              : detail::median(values, scratch);
}

}  // namespace

std::vector<int> shift_range(int tau) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  std::vector<int> shifts;
  shifts.reserve(tau);
  for (int l = -((tau - 1) / 2); l <= tau / 2; ++l) shifts.push_back(l);
  return shifts;
}

double ensemble_stat(const Signal& signal, std::ptrdiff_t center,
                     const EnsembleSpec& spec) {
  spec.patch.validate(signal.size());
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  if (center < 0 || center >= n)
    throw std::invalid_argument("center index out of range");
  const ShiftBounds b = surviving_centers(center, spec.patch.tau, n);
  std::vector<double> inner;
  for (std::ptrdiff_t c = b.first; c <= b.last; ++c)
    inner.push_back(patch_stat(signal, c, spec.patch, spec.inner));
  std::vector<double> scratch;
  return combine(inner, spec.outer, scratch);
}

std::vector<double> ensemble_series(const Signal& signal,
                                    const EnsembleSpec& spec) {
  return ensemble_series(signal.values(), spec);
}

std::vector<double> ensemble_series(std::span<const double> x,
                                    const EnsembleSpec& spec) {
  const std::vector<double> inner = patch_series(x, spec.patch, spec.inner);
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> out(x.size());
  std::vector<double> scratch;
  const std::span<const double> view(inner);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const ShiftBounds b = surviving_centers(i, spec.patch.tau, n);
    out[i] = combine(view.subspan(b.first, b.last - b.first + 1), spec.outer,
                     scratch);
  }
  return out;
}

Kernel eave_kernel(int tau) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  Kernel k;
  k.weights.resize(2 * static_cast<std::size_t>(tau) - 1);
  const double norm = static_cast<double>(tau) * tau;
  for (int j = -(tau - 1); j <= tau - 1; ++j)
    k.weights[j + tau - 1] = (tau - (j < 0 ? -j : j)) / norm;
  return k;
}

}  // namespace ept
