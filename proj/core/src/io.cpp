#include "ept/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <system_error>

namespace ept {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_row(std::string_view line, std::vector<double>& cells) {
  cells.clear();
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    double v = 0.0;
    if (!parse_double(line.substr(pos, comma - pos), v)) return false;
    cells.push_back(v);
    if (comma == std::string_view::npos) return true;
    pos = comma + 1;
  }
}

}  // namespace

Signal read_series(const std::filesystem::path& path,
                   const SeriesFormat& format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_series(in, format);
}

Signal parse_series(std::istream& in, const SeriesFormat& format) {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<std::size_t> line_of;
  std::vector<double> cells;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const bool first = !seen_content;
    seen_content = true;
    if (!parse_row(row, cells)) {
      if (first) continue;  // header
      throw ParseError("line " + std::to_string(line_no) +
                       ": cannot parse '" + std::string(row) + "'");
    }
    if (columns == 0) {
      columns = cells.size();
      if (columns > 2)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected 1 or 2 columns, got " +
                         std::to_string(columns));
    } else if (cells.size() != columns) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " columns");
    }
    if (columns == 2) times.push_back(cells[0]);
    values.push_back(cells.back());
    line_of.push_back(line_no);
  }
  if (values.empty()) throw ParseError("no samples found");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw ParseError("line " + std::to_string(line_of[i]) +
                       ": non-finite sample");
  }

  if (columns == 1 || times.size() < 2) {
    const double t0 = columns == 2 ? times.front() : format.t0;
    return Signal(std::move(values), format.dt, t0);
  }

  // Steps are checked against the first one so the error names the row
  // where the spacing changes; the stored dt averages over the whole span.
  const double first_step = times[1] - times[0];
  if (!(first_step > 0.0) || !std::isfinite(first_step))
    throw NonUniformSpacingError("line " + std::to_string(line_of[1]) +
                                     ": time column must be strictly increasing",
                                 line_of[1]);
  for (std::size_t i = 2; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - first_step) > format.spacing_rel_tol * first_step) {
      std::ostringstream msg;
      msg << "line " << line_of[i] << ": non-uniform time spacing (step "
          << step << ", expected " << first_step << ")";
      throw NonUniformSpacingError(msg.str(), line_of[i]);
    }
  }
  const double dt = (times.back() - times.front()) /
                    static_cast<double>(times.size() - 1);
  return Signal(std::move(values), dt, times.front());
}

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void write_signal_csv(const Signal& signal, std::ostream& out) {
  for (std::size_t i = 0; i < signal.size(); ++i)
    out << format_real(signal.time_at(i)) << ',' << format_real(signal[i])
        << '\n';
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    try {
      writer(out);
      out.flush();
      if (!out) throw std::runtime_error("write failed for " + tmp.string());
    } catch (...) {
      out.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw;
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ept
