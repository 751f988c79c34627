#include "ept/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ept {

Signal::Signal(std::vector<double> values, double dt, double t0)
    : values_(std::move(values)), dt_(dt), t0_(t0) {
  if (values_.empty()) throw std::invalid_argument("signal is empty");
  if (!std::isfinite(dt_) || dt_ <= 0.0)
    throw std::invalid_argument("sampling interval must be positive, got " +
                                std::to_string(dt_));
  if (!std::isfinite(t0_))
    throw std::invalid_argument("start time must be finite");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw std::invalid_argument("non-finite sample at index " +
                                  std::to_string(i));
  }
}

Signal Signal::with_values(std::vector<double> values) const {
  return Signal(std::move(values), dt_, t0_);
}

Signal from_samples(std::vector<double> values, double dt, double t0) {
  return Signal(std::move(values), dt, t0);
}

void PatchSpec::validate(std::size_t n) const {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (static_cast<std::size_t>(tau) > n)
    throw std::invalid_argument("tau=" + std::to_string(tau) +
                                " exceeds signal length " + std::to_string(n));
  if (!std::isfinite(gamma) || gamma < 0.0)
    throw std::invalid_argument("gamma must be finite and >= 0");
}

WindowIndex window_for(std::ptrdiff_t center, int tau, std::size_t n) {
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (static_cast<std::size_t>(tau) > n)
    throw std::invalid_argument("tau exceeds signal length");
  if (center < 0 || static_cast<std::size_t>(center) >= n)
    throw std::invalid_argument("center index out of range");
  return clamped_window(center, tau, static_cast<std::ptrdiff_t>(n));
}

std::string_view to_string(Shape shape) noexcept {
  switch (shape) {
    case Shape::Rectangle: return "rectangle";
    case Shape::Oval: return "oval";
  }
  return "?";
}

std::string_view to_string(StatKind kind) noexcept {
  switch (kind) {
    case StatKind::Ave: return "ave";
    case StatKind::MeanEnvelope: return "mean-envelope";
    case StatKind::Sd: return "sd";
    case StatKind::Range: return "range";
    case StatKind::Median: return "median";
    case StatKind::Lower: return "lower";
    case StatKind::Upper: return "upper";
  }
  return "?";
}

}  // namespace ept
