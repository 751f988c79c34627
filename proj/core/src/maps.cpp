#include "ept/maps.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ept/io.hpp"
#include "parallel.hpp"

namespace ept {
namespace {

MapKind kind_for(StatKind stat) {
  switch (stat) {
    case StatKind::Ave:
    case StatKind::MeanEnvelope:
    case StatKind::Median:
      return MapKind::Centrality;
    case StatKind::Sd:
    case StatKind::Range:
      return MapKind::Dispersion;
    default:
      throw std::invalid_argument(
          "map statistic must be a centrality or dispersion measure, got " +
          std::string(to_string(stat)));
  }
}

MapKind derivative_kind(MapKind kind, DiffAxis axis) {
  const bool time = axis == DiffAxis::Time;
  switch (kind) {
    case MapKind::Centrality:
      return time ? MapKind::DCentralityDt : MapKind::DCentralityDtau;
    case MapKind::Dispersion:
      return time ? MapKind::DDispersionDt : MapKind::DDispersionDtau;
    default:
      throw std::invalid_argument("derivative maps can not be differenced again");
  }
}

// Differences along one line of the grid; step(i) is the coordinate of
// element i.
template <typename Get, typename Coord, typename Put>
void difference_line(std::size_t len, Get get, Coord coord, Put put) {
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1;
    const std::size_t b = i + 1 == len ? i : i + 1;
    put(i, (get(b) - get(a)) / (coord(b) - coord(a)));
  }
}

}  // namespace

MapGrid build_map(const Signal& signal, std::span<const int> taus,
                  const MapSource& source, StatKind stat) {
  if (taus.empty()) throw std::invalid_argument("tau grid is empty");
  for (std::size_t r = 0; r < taus.size(); ++r) {
    if (r > 0 && taus[r] <= taus[r - 1])
      throw std::invalid_argument("tau grid must be strictly ascending");
    if (taus[r] < 1 || static_cast<std::size_t>(taus[r]) > signal.size())
      throw std::invalid_argument("tau " + std::to_string(taus[r]) +
                                  " is not valid for the signal");
  }

  MapGrid grid;
  grid.kind = kind_for(stat);
  grid.taus.assign(taus.begin(), taus.end());
  grid.times.resize(signal.size());
  for (std::size_t j = 0; j < signal.size(); ++j)
    grid.times[j] = static_cast<std::ptrdiff_t>(j);
  grid.values.resize(grid.rows() * grid.cols());
  grid.dt = signal.dt();
  grid.t0 = signal.t0();

  detail::parallel_for(grid.rows(), [&](std::size_t r) {
    std::vector<double> row;
    if (const auto* patch = std::get_if<PatchSpec>(&source)) {
      PatchSpec spec = *patch;
      spec.tau = grid.taus[r];
      row = patch_series(signal, spec, stat);
    } else {
      EnsembleSpec spec = std::get<EnsembleSpec>(source);
      spec.patch.tau = grid.taus[r];
      spec.inner = stat;
      row = ensemble_series(signal, spec);
    }
    std::copy(row.begin(), row.end(),
              grid.values.begin() + static_cast<std::ptrdiff_t>(r * grid.cols()));
  });
  return grid;
}

MapGrid diff_map(const MapGrid& grid, DiffAxis axis) {
  MapGrid out = grid;
  out.kind = derivative_kind(grid.kind, axis);
  if (axis == DiffAxis::Time) {
    if (grid.cols() < 2)
      throw std::invalid_argument("time derivative needs at least 2 columns");
    for (std::size_t r = 0; r < grid.rows(); ++r) {
      difference_line(
          grid.cols(), [&](std::size_t c) { return grid.at(r, c); },
          [&](std::size_t c) { return static_cast<double>(grid.times[c]) * grid.dt; },
          [&](std::size_t c, double v) { out.at(r, c) = v; });
    }
  } else {
    if (grid.rows() < 2)
      throw std::invalid_argument("scale derivative needs at least 2 rows");
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      difference_line(
          grid.rows(), [&](std::size_t r) { return grid.at(r, c); },
          [&](std::size_t r) { return static_cast<double>(grid.taus[r]); },
          [&](std::size_t r, double v) { out.at(r, c) = v; });
    }
  }
  return out;
}

void write_map_csv(const MapGrid& grid, std::ostream& out) {
  out << "tau";
  for (std::ptrdiff_t t : grid.times)
    out << '\t' << format_real(grid.t0 + static_cast<double>(t) * grid.dt);
  out << '\n';
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    out << grid.taus[r];
    for (double v : grid.row(r)) out << '\t' << format_real(v);
    out << '\n';
  }
}

void write_map_pgm(const MapGrid& grid, std::ostream& out) {
  const auto [lo_it, hi_it] =
      std::minmax_element(grid.values.begin(), grid.values.end());
  const double lo = lo_it == grid.values.end() ? 0.0 : *lo_it;
  const double span = lo_it == grid.values.end() ? 0.0 : *hi_it - lo;
  out << "P2\n" << grid.cols() << ' ' << grid.rows() << "\n255\n";
  for (std::size_t r = grid.rows(); r-- > 0;) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const double scaled =
          span > 0.0 ? (grid.at(r, c) - lo) / span * 255.0 : 0.0;
      out << (c ? " " : "") << static_cast<int>(std::lround(scaled));
    }
    out << '\n';
  }
}

std::string_view to_string(MapKind kind) noexcept {
  switch (kind) {
    case MapKind::Centrality: return "centrality";
    case MapKind::Dispersion: return "dispersion";
    case MapKind::DCentralityDt: return "d-centrality/dt";
    case MapKind::DCentralityDtau: return "d-centrality/dtau";
    case MapKind::DDispersionDt: return "d-dispersion/dt";
    case MapKind::DDispersionDtau: return "d-dispersion/dtau";
  }
  return "?";
}

}  // namespace ept
