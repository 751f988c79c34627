#pragma once

// Single-patch envelopes and per-patch statistics.
//
// A patch anchored at sample c covers the window_for(c, tau, n) samples. Its
// vertical extent is the local min/max widened by a gamma-scaled margin: a
// flat 0.5*gamma*tau for rectangles, a half-ellipse gamma*sqrt(tau^2/4 - k^2)
// at offset k for ovals.

#include <span>
#include <utility>
#include <vector>

#include "ept/signal.hpp"

namespace ept {

struct Envelopes {
  double lower = 0.0;
  double upper = 0.0;
};

Envelopes envelopes(const Signal& signal, std::ptrdiff_t center,
                    const PatchSpec& spec);

double patch_stat(const Signal& signal, std::ptrdiff_t center,
                  const PatchSpec& spec, StatKind stat);

/// patch_stat evaluated at every center; output has the signal's length.
std::vector<double> patch_series(const Signal& signal, const PatchSpec& spec,
                                 StatKind stat);

/// Raw-sample overload used by the iterative algorithms, where the running
/// estimate is not wrapped in a Signal. Same validation as above.
std::vector<double> patch_series(std::span<const double> x,
                                 const PatchSpec& spec, StatKind stat);

/// Per-center window minimum and maximum for the clamped tau-sample windows,
/// O(n) via monotonic queues.
struct SlidingExtrema {
  std::vector<double> min;
  std::vector<double> max;
};
SlidingExtrema sliding_extrema(std::span<const double> x, int tau);

}  // namespace ept
