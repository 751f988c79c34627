#pragma once

// Data-driven choice of the size parameter tau: a priori from the spacing of
// local maxima, a posteriori by minimizing the correlation between the two
// extracted parts over a grid of tau values.

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "ept/decompose.hpp"
#include "ept/ensemble.hpp"
#include "ept/signal.hpp"

namespace ept {

class TooFewExtremaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict local maxima. A run of equal values strictly above both neighbours
/// counts once, at floor((first + last) / 2).
std::vector<std::ptrdiff_t> local_maxima(const Signal& signal);

struct PeriodHistogram {
  std::map<int, int> counts;  // gap in samples -> occurrences
  int mode = 0;               // most frequent gap, smallest on ties
};

/// Histogram of gaps between successive local maxima. Minima can be handled
/// by negating the signal first.
PeriodHistogram select_tau_period(const Signal& signal);

/// Which samples enter the correlation: drop tau samples per end (the
/// default), a fixed count, or nothing.
struct TrimPolicy {
  enum class Kind { Tau, Fixed, None };
  Kind kind = Kind::Tau;
  int samples = 0;  // Fixed only

  static TrimPolicy tau() { return {Kind::Tau, 0}; }
  static TrimPolicy fixed(int n) { return {Kind::Fixed, n}; }
  static TrimPolicy none() { return {Kind::None, 0}; }
  int samples_for(int tau) const noexcept;
};

struct TauSearchResult {
  std::vector<int> tau_grid;
  std::vector<double> correlations;  // signed Pearson r of high vs low
  std::vector<bool> degenerate;      // a part had zero variance; r set to 0
  int best_tau = 0;                  // min |r|, smallest tau on ties
};

TauSearchResult select_tau_correlation(const Signal& signal,
                                       std::span<const int> tau_grid,
                                       const EnsembleSpec& spec_template,
                                       const ExtractOptions& options = {},
                                       TrimPolicy trim = TrimPolicy::tau());

/// Pearson sample correlation. Returns false (and leaves r at 0) when either
/// input has zero variance.
bool pearson(std::span<const double> a, std::span<const double> b, double& r);

}  // namespace ept
