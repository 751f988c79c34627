#pragma once

// Domain types shared by every ept module: the sampled signal, patch
// parameters, statistic kinds and the discrete window convention.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ept {

/// Uniformly sampled real-valued signal. Immutable once constructed.
///
/// Time is metadata only: sample i sits at t0 + i * dt. Every algorithm in
/// the library works on sample indices.
class Signal {
 public:
  /// Validates and copies the samples. Throws std::invalid_argument on an
  /// empty sequence, a non-finite sample, or dt <= 0 (or non-finite).
  explicit Signal(std::vector<double> values, double dt = 1.0, double t0 = 0.0);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double dt() const noexcept { return dt_; }
  double t0() const noexcept { return t0_; }
  double time_at(std::size_t i) const noexcept {
    return t0_ + static_cast<double>(i) * dt_;
  }

  /// Same sampling grid, new samples (validated like the constructor).
  Signal with_values(std::vector<double> values) const;

 private:
  std::vector<double> values_;
  double dt_;
  double t0_;
};

Signal from_samples(std::vector<double> values, double dt, double t0);

enum class Shape { Rectangle, Oval };

/// Size parameter tau (window width in samples), scale factor gamma for the
/// vertical margin of the patch, and the patch shape.
struct PatchSpec {
  Shape shape = Shape::Rectangle;
  int tau = 1;
  double gamma = 1.0;

  /// Throws std::invalid_argument unless 1 <= tau <= n and gamma is a
  /// finite non-negative number.
  void validate(std::size_t n) const;
};

enum class StatKind { Ave, MeanEnvelope, Sd, Range, Median, Lower, Upper };

/// Half-open sample range [start, start + len).
struct WindowIndex {
  std::ptrdiff_t start = 0;
  std::ptrdiff_t len = 0;

  std::ptrdiff_t end() const noexcept { return start + len; }
  friend bool operator==(const WindowIndex&, const WindowIndex&) = default;
};

/// The tau consecutive samples starting at center - floor(tau/2), clamped to
/// [0, n). Even tau puts the extra sample on the left.
WindowIndex window_for(std::ptrdiff_t center, int tau, std::size_t n);

/// Unchecked variant used by the series kernels once arguments are known to
/// be valid.
inline WindowIndex clamped_window(std::ptrdiff_t center, int tau,
                                  std::ptrdiff_t n) noexcept {
  std::ptrdiff_t start = center - tau / 2;
  std::ptrdiff_t end = start + tau;
  if (start < 0) start = 0;
  if (end > n) end = n;
  return {start, end - start};
}

std::string_view to_string(Shape shape) noexcept;
std::string_view to_string(StatKind kind) noexcept;

}  // namespace ept
