#pragma once

// Signal CSV input/output and atomic file replacement.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ept/signal.hpp"

namespace ept {

/// Malformed input file: unreadable, unparsable cell, ragged rows.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-column input whose time steps are not uniform.
class NonUniformSpacingError : public ParseError {
 public:
  NonUniformSpacingError(const std::string& what, std::size_t row)
      : ParseError(what), row_(row) {}
  /// 1-based line number of the offending row.
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

struct SeriesFormat {
  double dt = 1.0;  // used by the single-column layout
  double t0 = 0.0;  // used by the single-column layout
  double spacing_rel_tol = 1e-6;
};

/// Reads either one value per line, or "time,value" rows with uniform time
/// spacing. Blank lines and lines starting with '#' are skipped; a
/// non-numeric first line is treated as a header.
Signal read_series(const std::filesystem::path& path,
                   const SeriesFormat& format = {});
Signal parse_series(std::istream& in, const SeriesFormat& format = {});

/// 12 significant digits, shortest form.
std::string format_real(double v);

/// "t,value" rows, no header.
void write_signal_csv(const Signal& signal, std::ostream& out);

/// Writes through a sibling temp file and renames it over path, so a failed
/// writer never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace ept
