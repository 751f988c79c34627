#pragma once

// Synthetic test signals with their ground-truth components, and seeded
// Gaussian noise.
//
// Noise comes from std::mt19937_64 (whose output sequence is fixed by the
// C++ standard) mapped to normals with the Box-Muller transform, so a given
// seed produces the same samples on every conforming platform.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ept/signal.hpp"

namespace ept {

/// Activity window of a term; each end is open or closed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double t) const noexcept {
    return (lo_closed ? t >= lo : t > lo) && (hi_closed ? t <= hi : t < hi);
  }
};

/// amplitude * cos(2*pi*frequency*t + phase), zero outside `active`.
struct CosineTerm {
  double amplitude = 1.0;
  double frequency = 0.0;
  double phase = 0.0;
  std::optional<Interval> active;
};

struct Trend {
  double slope = 0.0;
  double intercept = 0.0;
};

struct SignalSpec {
  std::vector<CosineTerm> terms;
  std::optional<Trend> trend;
  std::size_t n = 1000;
  double t_start = 0.0;
  double t_end = 1.0;

  void validate() const;
};

struct GeneratedSignal {
  Signal signal;
  /// One entry per term, then the trend if present. Summing them in order
  /// reproduces the signal bit for bit.
  std::vector<std::vector<double>> components;
};

/// Samples on t_j = t_start + j * (t_end - t_start) / (n - 1).
GeneratedSignal generate(const SignalSpec& spec);

struct NoisySignal {
  Signal signal;
  std::vector<double> noise;
};

/// i.i.d. N(0, sd^2) with sd = sample_sd(signal) / snr.
NoisySignal add_noise(const Signal& signal, double snr, std::uint64_t seed);
double noise_sd_for(const Signal& signal, double snr);

/// Standard normal draws for a seed (the generator behind add_noise).
std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed);

/// Named signals used throughout the docs and tests.
enum class Preset { Example1, Example2, Example3, Intro };

struct PresetInfo {
  Preset preset;
  std::string_view name;
  std::vector<int> taus;  // default size parameter per decomposition level
  bool median_of_averages = false;
  double snr = 0.0;  // > 0 when the preset is noisy
};

std::optional<Preset> parse_preset(std::string_view name);
const PresetInfo& preset_info(Preset preset);
SignalSpec preset_spec(Preset preset, std::size_t n = 1000);

/// The preset signal with noise applied when the preset calls for it. The
/// returned components hold the clean terms followed by the noise (if any).
GeneratedSignal make_preset(Preset preset, std::uint64_t seed = 1,
                            std::size_t n = 1000);

}  // namespace ept
