#pragma once

// Multiscale (tau, t) grids of centrality and dispersion statistics, their
// finite-difference derivative maps, and CSV / PGM export.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ept/ensemble.hpp"
#include "ept/signal.hpp"

namespace ept {

enum class MapKind {
  Centrality,
  Dispersion,
  DCentralityDt,
  DCentralityDtau,
  DDispersionDt,
  DDispersionDtau,
};

enum class DiffAxis { Time, Scale };

/// Row r holds the statistic at tau = taus[r]; column j is sample j.
struct MapGrid {
  std::vector<int> taus;
  std::vector<std::ptrdiff_t> times;
  std::vector<double> values;  // row-major, taus.size() x times.size()
  MapKind kind = MapKind::Centrality;
  double dt = 1.0;
  double t0 = 0.0;

  std::size_t rows() const noexcept { return taus.size(); }
  std::size_t cols() const noexcept { return times.size(); }
  double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const {
    return values[r * cols() + c];
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols(), cols());
  }
};

/// Single patches or ensemble patches; the stat argument of build_map
/// replaces the template's inner statistic.
using MapSource = std::variant<PatchSpec, EnsembleSpec>;

/// Ave, MeanEnvelope and Median give a Centrality map; Sd and Range a
/// Dispersion map. Lower/Upper are rejected.
MapGrid build_map(const Signal& signal, std::span<const int> taus,
                  const MapSource& source, StatKind stat);

/// Central differences inside, one-sided at the two edges. Time steps use
/// dt; scale steps use the actual gap between neighbouring taus.
MapGrid diff_map(const MapGrid& grid, DiffAxis axis);

/// Header "tau\t<t values...>", then one tab-separated row per tau.
void write_map_csv(const MapGrid& grid, std::ostream& out);

/// Plain PGM (P2), min-max scaled to 0..255, largest tau on the top row.
void write_map_pgm(const MapGrid& grid, std::ostream& out);

std::string_view to_string(MapKind kind) noexcept;

}  // namespace ept
