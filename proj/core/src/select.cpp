#include "ept/select.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"

namespace ept {

std::vector<std::ptrdiff_t> local_maxima(const Signal& signal) {
  const auto x = signal.values();
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  if (n < 3) throw std::invalid_argument("local maxima need >= 3 samples");
  std::vector<std::ptrdiff_t> out;
  std::ptrdiff_t i = 1;
  while (i < n - 1) {
    if (!(x[i] > x[i - 1])) {
      ++i;
      continue;
    }
    std::ptrdiff_t last = i;
    while (last + 1 < n && x[last + 1] == x[i]) ++last;
    if (last + 1 < n && x[last + 1] < x[i]) out.push_back((i + last) / 2);
    i = last + 1;
  }
  return out;
}

PeriodHistogram select_tau_period(const Signal& signal) {
  const auto maxima = local_maxima(signal);
  if (maxima.size() < 2)
    throw TooFewExtremaError("period selection needs at least 2 local maxima, found " +
                             std::to_string(maxima.size()));
  PeriodHistogram h;
  for (std::size_t k = 1; k < maxima.size(); ++k)
    ++h.counts[static_cast<int>(maxima[k] - maxima[k - 1])];
  int best = 0;
  for (const auto& [gap, count] : h.counts) {
    if (count > best) {  // ascending keys: first maximum is the smallest gap
      best = count;
      h.mode = gap;
    }
  }
  return h;
}

int TrimPolicy::samples_for(int tau) const noexcept {
  switch (kind) {
    case Kind::Tau: return tau;
    case Kind::Fixed: return samples;
    case Kind::None: return 0;
  }
  return 0;
}

bool pearson(std::span<const double> a, std::span<const double> b, double& r) {
  r = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return false;
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return false;
  r = std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
  return true;
}

TauSearchResult select_tau_correlation(const Signal& signal,
                                       std::span<const int> tau_grid,
                                       const EnsembleSpec& spec_template,
                                       const ExtractOptions& options,
                                       TrimPolicy trim) {
  if (tau_grid.empty()) throw std::invalid_argument("tau grid is empty");
  if (trim.kind == TrimPolicy::Kind::Fixed && trim.samples < 0)
    throw std::invalid_argument("trim must be >= 0");
  const std::size_t n = signal.size();
  for (int tau : tau_grid) {
    EnsembleSpec spec = spec_template;
    spec.patch.tau = tau;
    spec.patch.validate(n);
    const auto cut = static_cast<std::size_t>(trim.samples_for(tau));
    if (2 * cut + 2 > n)
      throw std::invalid_argument("trim leaves fewer than 2 samples for tau=" +
                                  std::to_string(tau));
  }

  TauSearchResult result;
  result.tau_grid.assign(tau_grid.begin(), tau_grid.end());
  result.correlations.assign(tau_grid.size(), 0.0);
  std::vector<char> degenerate(tau_grid.size(), 0);

  detail::parallel_for(tau_grid.size(), [&](std::size_t k) {
    EnsembleSpec spec = spec_template;
    spec.patch.tau = tau_grid[k];
    const ExtractResult r = extract(signal, spec, options);
    const auto cut = static_cast<std::size_t>(trim.samples_for(tau_grid[k]));
    const std::span<const double> high(r.high);
    const std::span<const double> low(r.low);
    double corr = 0.0;
    const bool ok = pearson(high.subspan(cut, n - 2 * cut),
                            low.subspan(cut, n - 2 * cut), corr);
    result.correlations[k] = corr;
    degenerate[k] = ok ? 0 : 1;
  });

  result.degenerate.assign(degenerate.begin(), degenerate.end());
  std::size_t best = 0;
  for (std::size_t k = 1; k < tau_grid.size(); ++k) {
    const double a = std::abs(result.correlations[k]);
    const double b = std::abs(result.correlations[best]);
    if (a < b || (a == b && tau_grid[k] < tau_grid[best])) best = k;
  }
  result.best_tau = tau_grid[best];
  return result;
}

}  // namespace ept
