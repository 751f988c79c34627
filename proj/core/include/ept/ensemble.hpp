#pragma once

// Ensemble patch statistics: a per-patch measure evaluated on every shifted
// patch covering a sample, then combined across shifts.
//
//   (Ave, Mean)           EAve
//   (MeanEnvelope, Mean)  EM
//   (Sd, Mean)            Esd
//   (Range, Mean)         ER
//   (Median, Mean)        EMed
//   (Ave, Median)         median-of-averages, robust to sharp level shifts
//
// In the interior, EAve is convolution with the centered triangular kernel
// returned by eave_kernel().

#include <span>
#include <vector>

#include "ept/patch.hpp"
#include "ept/signal.hpp"

namespace ept {

enum class Outer { Mean, Median };

struct EnsembleSpec {
  PatchSpec patch;
  StatKind inner = StatKind::Ave;
  Outer outer = Outer::Mean;

  static EnsembleSpec eave(int tau) {
    return {{Shape::Rectangle, tau, 1.0}, StatKind::Ave, Outer::Mean};
  }
  static EnsembleSpec em(int tau, double gamma = 1.0,
                         Shape shape = Shape::Rectangle) {
    return {{shape, tau, gamma}, StatKind::MeanEnvelope, Outer::Mean};
  }
  static EnsembleSpec median_of_averages(int tau) {
    return {{Shape::Rectangle, tau, 1.0}, StatKind::Ave, Outer::Median};
  }

  /// True when the filter is linear in the signal (mean of linear measures).
  bool is_linear() const noexcept {
    return outer == Outer::Mean && inner == StatKind::Ave;
  }
};

/// Centered discrete kernel, weights[j + radius()] for offsets j in
/// [-radius(), radius()].
struct Kernel {
  std::vector<double> weights;

  int radius() const noexcept {
    return static_cast<int>(weights.size() / 2);
  }
  double at(int offset) const { return weights.at(offset + radius()); }
};

/// The tau shifts {-floor((tau-1)/2), ..., ceil((tau-1)/2)}. Paired with the
/// left-heavy window of window_for this makes the composite EAve kernel
/// exactly symmetric.
std::vector<int> shift_range(int tau);

double ensemble_stat(const Signal& signal, std::ptrdiff_t center,
                     const EnsembleSpec& spec);

std::vector<double> ensemble_series(const Signal& signal,
                                    const EnsembleSpec& spec);
std::vector<double> ensemble_series(std::span<const double> x,
                                    const EnsembleSpec& spec);

/// Boxcar convolved with itself: weights (tau - |j|) / tau^2.
Kernel eave_kernel(int tau);

}  // namespace ept
