#pragma once

// Iterative ensemble-patch filtering decomposition.
//
// With G an ensemble filter, the high-frequency estimate starts at
// X - G(X) and is refined by repeatedly subtracting G of itself:
//
//   high_0     = X - G(X)
//   high_{k+1} = high_k - G(high_k)
//
// For G = EAve with tau equal to the period of a zero-sum periodic component,
// that component is annihilated by G while everything whose spectrum avoids
// the tau-harmonics is drained geometrically into the low part.

#include <span>
#include <vector>

#include "ept/ensemble.hpp"
#include "ept/signal.hpp"

namespace ept {

inline constexpr double kDefaultTolerance = 1e-6;

// Components whose period is close to, but not exactly, tau leak a small
// fraction into the low part on every pass, so a long run slowly erodes the
// very component being extracted. The cap keeps the refinement to a handful
// of passes, enough to drain the low-frequency content.
inline constexpr int kDefaultMaxIterations = 5;

struct ExtractResult {
  std::vector<double> high;
  std::vector<double> low;  // input - high
  int iterations = 0;       // number of refinement passes applied
  bool converged = false;
  double final_update_norm = 0.0;  // interior sup-norm of the last G(high)
};

struct ExtractOptions {
  double tolerance = kDefaultTolerance;
  int max_iterations = kDefaultMaxIterations;
};

/// Runs the refinement until the interior sup-norm of G(high) drops to
/// tolerance * sup|X| or max_iterations passes have been applied. The
/// interior is [tau - 1, n - tau], where no window or shift is clamped; the
/// whole signal is used when that range is empty. Not converging is reported
/// through `converged`, not thrown.
ExtractResult extract(const Signal& signal, const EnsembleSpec& spec,
                      const ExtractOptions& options = {});

struct DecompositionLevel {
  EnsembleSpec spec;
  ExtractOptions options;
};

struct DecompositionPlan {
  std::vector<DecompositionLevel> levels;
};

struct Decomposition {
  std::vector<std::vector<double>> components;  // highest frequency first
  std::vector<double> residue;
  std::vector<ExtractResult> diagnostics;
};

/// Extracts level by level, feeding each level's low part to the next.
/// components + residue reproduce the input exactly.
Decomposition sequential_decompose(const Signal& signal,
                                   const DecompositionPlan& plan);

/// IR_1 = G(X), IR_k = IR_{k-1} + G(X - IR_{k-1}).
/// X - IR_k equals high_{k-1} of the refinement above.
std::vector<double> iterate_representation(const Signal& signal,
                                           const EnsembleSpec& spec, int k);

}  // namespace ept
