#include "ept/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stats.hpp"

namespace ept {
namespace {

void validate(const EnsembleSpec& spec, const ExtractOptions& options,
              std::size_t n) {
  spec.patch.validate(n);
  if (!(options.tolerance > 0.0) || !std::isfinite(options.tolerance))
    throw std::invalid_argument("tolerance must be positive");
  if (options.max_iterations < 1)
    throw std::invalid_argument("max_iterations must be >= 1");
}

double interior_sup(std::span<const double> v, int tau) {
  const std::size_t lo = static_cast<std::size_t>(tau - 1);
  const std::size_t n = v.size();
  if (n < 2 * static_cast<std::size_t>(tau) - 1) return detail::sup_norm(v);
  return detail::sup_norm(v.subspan(lo, n - 2 * lo));
}

}  // namespace

ExtractResult extract(const Signal& signal, const EnsembleSpec& spec,
                      const ExtractOptions& options) {
  validate(spec, options, signal.size());
  const auto x = signal.values();
  const double threshold = options.tolerance * detail::sup_norm(x);

  ExtractResult r;
  r.high.assign(x.begin(), x.end());
  {
    const std::vector<double> g = ensemble_series(x, spec);
    for (std::size_t i = 0; i < x.size(); ++i) r.high[i] -= g[i];
  }
  for (r.iterations = 1; r.iterations <= options.max_iterations;
       ++r.iterations) {
    const std::vector<double> update = ensemble_series(r.high, spec);
    for (std::size_t i = 0; i < x.size(); ++i) r.high[i] -= update[i];
    r.final_update_norm = interior_sup(update, spec.patch.tau);
    if (r.final_update_norm <= threshold) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, options.max_iterations);

  r.low.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r.low[i] = x[i] - r.high[i];
  return r;
}

Decomposition sequential_decompose(const Signal& signal,
                                   const DecompositionPlan& plan) {
  if (plan.levels.empty())
    throw std::invalid_argument("decomposition plan has no levels");
  for (const auto& level : plan.levels)
    validate(level.spec, level.options, signal.size());

  Decomposition d;
  Signal current = signal;
  for (const auto& level : plan.levels) {
    ExtractResult r = extract(current, level.spec, level.options);
    d.components.push_back(r.high);
    current = current.with_values(r.low);
    d.diagnostics.push_back(std::move(r));
  }
  const auto residue = current.values();
  d.residue.assign(residue.begin(), residue.end());
  return d;
}

std::vector<double> iterate_representation(const Signal& signal,
                                           const EnsembleSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  spec.patch.validate(signal.size());
  const auto x = signal.values();
  std::vector<double> ir = ensemble_series(x, spec);
  std::vector<double> rest(x.size());
  for (int step = 2; step <= k; ++step) {
    for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - ir[i];
    const std::vector<double> g = ensemble_series(rest, spec);
    for (std::size_t i = 0; i < x.size(); ++i) ir[i] += g[i];
  }
  return ir;
}

}  // namespace ept
