#include "ept/siggen.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "stats.hpp"

namespace ept {

void SignalSpec::validate() const {
  if (n < 2) throw std::invalid_argument("signal spec needs n >= 2");
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start))
    throw std::invalid_argument("signal spec domain must satisfy t_start < t_end");
  for (const auto& term : terms) {
    if (!std::isfinite(term.amplitude) || !std::isfinite(term.frequency) ||
        !std::isfinite(term.phase))
      throw std::invalid_argument("cosine term parameters must be finite");
    if (term.active) {
      const Interval& a = *term.active;
      if (!(a.lo <= a.hi) || a.lo < t_start || a.hi > t_end)
        throw std::invalid_argument("active interval must lie within the domain");
    }
  }
  if (trend && (!std::isfinite(trend->slope) || !std::isfinite(trend->intercept)))
    throw std::invalid_argument("trend parameters must be finite");
  if (terms.empty() && !trend)
    throw std::invalid_argument("signal spec has no terms");
}

GeneratedSignal generate(const SignalSpec& spec) {
  spec.validate();
  const double dt = (spec.t_end - spec.t_start) / static_cast<double>(spec.n - 1);
  std::vector<double> t(spec.n);
  for (std::size_t j = 0; j < spec.n; ++j)
    t[j] = spec.t_start + static_cast<double>(j) * dt;

  std::vector<std::vector<double>> components;
  for (const auto& term : spec.terms) {
    std::vector<double> c(spec.n, 0.0);
    for (std::size_t j = 0; j < spec.n; ++j) {
      if (term.active && !term.active->contains(t[j])) continue;
      c[j] = term.amplitude *
             std::cos(2.0 * std::numbers::pi * term.frequency * t[j] + term.phase);
    }
    components.push_back(std::move(c));
  }
  if (spec.trend) {
    std::vector<double> c(spec.n);
    for (std::size_t j = 0; j < spec.n; ++j)
      c[j] = spec.trend->slope * t[j] + spec.trend->intercept;
    components.push_back(std::move(c));
  }

  std::vector<double> sum(spec.n, 0.0);
  for (const auto& c : components)
    for (std::size_t j = 0; j < spec.n; ++j) sum[j] += c[j];
  return {Signal(std::move(sum), dt, spec.t_start), std::move(components)};
}

std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  // 53-bit uniform in (0, 1]; avoids log(0).
  auto uniform = [&engine] {
    return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
  };
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    out.push_back(radius * std::cos(angle));
    out.push_back(radius * std::sin(angle));
  }
  out.resize(n);
  return out;
}

double noise_sd_for(const Signal& signal, double snr) {
  if (!(snr > 0.0) || std::isnan(snr))
    throw std::invalid_argument("snr must be positive");
  return detail::sample_sd(signal.values()) / snr;
}

NoisySignal add_noise(const Signal& signal, double snr, std::uint64_t seed) {
  const double sd = noise_sd_for(signal, snr);
  std::vector<double> noise = gaussian_noise(signal.size(), seed);
  std::vector<double> noisy(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    noise[i] *= sd;
    noisy[i] = signal[i] + noise[i];
  }
  return {signal.with_values(std::move(noisy)), std::move(noise)};
}

namespace {

const std::array<PresetInfo, 4>& presets() {
  static const std::array<PresetInfo, 4> table{{
      {Preset::Example1, "example1", {21}, false, 0.0},
      {Preset::Example2, "example2", {21}, true, 0.0},
      {Preset::Example3, "example3", {10, 21}, false, 7.0},
      {Preset::Intro, "intro", {16}, false, 0.0},
  }};
  return table;
}

}  // namespace

std::optional<Preset> parse_preset(std::string_view name) {
  for (const auto& p : presets())
    if (p.name == name) return p.preset;
  return std::nullopt;
}

const PresetInfo& preset_info(Preset preset) {
  for (const auto& p : presets())
    if (p.preset == preset) return p;
  throw std::invalid_argument("unknown preset");
}

SignalSpec preset_spec(Preset preset, std::size_t n) {
  SignalSpec spec;
  spec.n = n;
  switch (preset) {
    case Preset::Example1:
    case Preset::Example3:
      spec.terms = {{1.0, 45.0, 0.0, std::nullopt}, {1.0, 5.0, 0.0, std::nullopt}};
      break;
    case Preset::Example2:
      spec.terms = {{1.0, 45.0, 0.0, Interval{0.0, 0.5, true, true}},
                    {1.0, 5.0, 0.0, Interval{0.5, 1.0, false, true}}};
      break;
    case Preset::Intro:
      spec.terms = {{1.0, 50.0, 0.0, std::nullopt}, {4.0, 30.0, 0.0, std::nullopt}};
      break;
  }
  return spec;
}

GeneratedSignal make_preset(Preset preset, std::uint64_t seed, std::size_t n) {
  GeneratedSignal g = generate(preset_spec(preset, n));
  const PresetInfo& info = preset_info(preset);
  if (info.snr > 0.0) {
    NoisySignal noisy = add_noise(g.signal, info.snr, seed);
    g.components.push_back(std::move(noisy.noise));
    g.signal = std::move(noisy.signal);
  }
  return g;
}

}  // namespace ept
