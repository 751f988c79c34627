#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ept/patch.hpp"
#include "oracle.hpp"

using ept::PatchSpec;
using ept::Shape;
using ept::Signal;
using ept::StatKind;

namespace {

Signal ramp(int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return Signal(v);
}

// Envelope-based statistics straight from the patch geometry.
double naive_stat(const std::vector<double>& x, long c, const PatchSpec& p, StatKind k) {
  const auto idx = oracle::window(c, p.tau, static_cast<long>(x.size()));
  double lower = 1e300, upper = -1e300;
  for (long j : idx) {
    double h = 0.5 * p.gamma * p.tau;
    if (p.shape == Shape::Oval) {
      const double r = 0.25 * p.tau * p.tau - double(j - c) * double(j - c);
      h = r > 0 ? p.gamma * std::sqrt(r) : 0.0;
    }
    lower = std::min(lower, x[j] - h);
    upper = std::max(upper, x[j] + h);
  }
  std::vector<double> w;
  for (long j : idx) w.push_back(x[j]);
  const double m = oracle::mean_of(x, idx);
  double ss = 0.0;
  for (double v : w) ss += (v - m) * (v - m);
  switch (k) {
    case StatKind::Ave: return m;
    case StatKind::MeanEnvelope: return 0.5 * (lower + upper);
    case StatKind::Sd: return w.size() > 1 ? std::sqrt(ss / double(w.size() - 1)) : 0.0;
    case StatKind::Range: return upper - lower;
    case StatKind::Median: return oracle::median_of(w);
    case StatKind::Lower: return lower;
    case StatKind::Upper: return upper;
  }
  return 0.0;
}

constexpr StatKind kAllStats[] = {StatKind::Ave,   StatKind::MeanEnvelope, StatKind::Sd,
                                  StatKind::Range, StatKind::Median,       StatKind::Lower,
                                  StatKind::Upper};

}  // namespace

TEST_SUITE("patch") {

TEST_CASE("rectangle envelopes of constant and ramp signals") {
  const Signal five(std::vector<double>(10, 5.0));
  auto e = ept::envelopes(five, 5, {Shape::Rectangle, 4, 1.0});
  CHECK(e.lower == 3.0);
  CHECK(e.upper == 7.0);

  e = ept::envelopes(ramp(10), 5, {Shape::Rectangle, 4, 1.0});
  CHECK(e.lower == 1.0);
  CHECK(e.upper == 8.0);
}

TEST_CASE("oval envelope follows the half ellipse") {
  const Signal zero(std::vector<double>(10, 0.0));
  const auto e = ept::envelopes(zero, 5, {Shape::Oval, 2, 1.0});
  CHECK(e.lower == -1.0);
  CHECK(e.upper == 1.0);
}

TEST_CASE("patch_stat on the worked examples") {
  const Signal five(std::vector<double>(10, 5.0));
  CHECK(ept::patch_stat(five, 5, {Shape::Rectangle, 4, 1.0}, StatKind::MeanEnvelope) == 5.0);
  CHECK(ept::patch_stat(ramp(10), 5, {Shape::Rectangle, 4, 1.0}, StatKind::Ave) == 4.5);
  CHECK(ept::patch_stat(ramp(10), 5, {Shape::Rectangle, 4, 1.0}, StatKind::Range) == 7.0);
  CHECK(ept::patch_stat(ramp(10), 5, {Shape::Rectangle, 4, 1.0}, StatKind::Median) == 4.5);
  CHECK(ept::patch_stat(ramp(10), 0, {Shape::Rectangle, 1, 1.0}, StatKind::Sd) == 0.0);
}

TEST_CASE("patch_series degenerate cases") {
  const Signal c(std::vector<double>(30, -2.5));
  for (int tau : {1, 2, 5, 30}) {
    for (double v : ept::patch_series(c, {Shape::Rectangle, tau, 1.0}, StatKind::Ave))
      REQUIRE(v == doctest::Approx(-2.5).epsilon(1e-15));
    for (double v : ept::patch_series(c, {Shape::Oval, tau, 1.0}, StatKind::Sd)) REQUIRE(v == 0.0);
  }
  std::mt19937_64 rng(3);
  const auto x = oracle::random_signal(40, rng);
  CHECK(ept::patch_series(Signal(x), {Shape::Rectangle, 1, 0.0}, StatKind::MeanEnvelope) == x);
  CHECK(ept::patch_series(Signal(x), {Shape::Oval, 1, 0.0}, StatKind::MeanEnvelope) == x);
}

TEST_CASE("patch_series matches a brute-force window scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const auto x = oracle::random_signal(97, rng, -3.0, 3.0);
    const Signal s(x);
    for (Shape shape : {Shape::Rectangle, Shape::Oval})
      for (int tau : {1, 2, 3, 8, 13, 50, 97})
        for (double gamma : {0.0, 0.3, 2.0})
          for (StatKind k : kAllStats) {
            const PatchSpec p{shape, tau, gamma};
            const auto series = ept::patch_series(s, p, k);
            for (long c = 0; c < 97; ++c) {
              const double want = naive_stat(x, c, p, k);
              REQUIRE(series[c] == doctest::Approx(want).epsilon(1e-12).scale(1.0));
              REQUIRE(ept::patch_stat(s, c, p, k) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
            }
          }
  }
}

TEST_CASE("sliding extrema agree exactly with a naive scan") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto x = oracle::random_signal(300, rng);
    // Ties exercise the deque's equal-value handling.
    for (std::size_t i = 0; i < x.size(); i += 7) x[i] = 0.25;
    for (int tau = 1; tau <= 64; ++tau) {
      const auto ext = ept::sliding_extrema(x, tau);
      for (long c = 0; c < 300; ++c) {
        const auto idx = oracle::window(c, tau, 300);
        REQUIRE(ext.min[c] == oracle::min_of(x, idx));
        REQUIRE(ext.max[c] == oracle::max_of(x, idx));
      }
    }
  }
}

TEST_CASE("adding a constant shifts location stats and leaves spread stats alone") {
  std::mt19937_64 rng(8);
  const auto x = oracle::random_signal(60, rng);
  for (double shift : {-4.0, 0.5, 100.0}) {
    std::vector<double> y = x;
    for (auto& v : y) v += shift;
    for (Shape shape : {Shape::Rectangle, Shape::Oval})
      for (int tau : {1, 4, 9})
        for (StatKind k : kAllStats) {
          const PatchSpec p{shape, tau, 0.7};
          const auto a = ept::patch_series(Signal(x), p, k);
          const auto b = ept::patch_series(Signal(y), p, k);
          const bool spread = k == StatKind::Sd || k == StatKind::Range;
          for (std::size_t i = 0; i < a.size(); ++i)
            REQUIRE(b[i] == doctest::Approx(spread ? a[i] : a[i] + shift).epsilon(1e-11).scale(1.0));
        }
  }
}

TEST_CASE("rectangle mean envelope does not depend on gamma") {
  std::mt19937_64 rng(9);
  const Signal s(oracle::random_signal(80, rng));
  for (int tau : {1, 3, 10, 31}) {
    const auto base = ept::patch_series(s, {Shape::Rectangle, tau, 0.0}, StatKind::MeanEnvelope);
    for (double gamma : {1.0, 10.0}) {
      CHECK(ept::patch_series(s, {Shape::Rectangle, tau, gamma}, StatKind::MeanEnvelope) == base);
      for (long c : {0L, 40L, 79L})
        CHECK(ept::patch_stat(s, c, {Shape::Rectangle, tau, gamma}, StatKind::MeanEnvelope) ==
              base[c]);
    }
  }
}

TEST_CASE("range is non-negative and rectangle range is at least gamma*tau") {
  std::mt19937_64 rng(10);
  const Signal s(oracle::random_signal(70, rng, -10.0, 10.0));
  for (int tau : {1, 2, 6, 25})
    for (double gamma : {0.0, 0.5, 3.0}) {
      for (double r : ept::patch_series(s, {Shape::Rectangle, tau, gamma}, StatKind::Range))
        REQUIRE(r >= gamma * tau);
      for (double r : ept::patch_series(s, {Shape::Oval, tau, gamma}, StatKind::Range))
        REQUIRE(r >= 0.0);
    }
}

TEST_CASE("invalid patch arguments are rejected") {
  const Signal s(std::vector<double>(5, 1.0));
  CHECK_THROWS_AS(ept::patch_series(s, {Shape::Rectangle, 6, 1.0}, StatKind::Ave),
                  std::invalid_argument);
  CHECK_THROWS_AS(ept::patch_stat(s, 5, {Shape::Rectangle, 2, 1.0}, StatKind::Ave),
                  std::invalid_argument);
  CHECK_THROWS_AS(ept::envelopes(s, -1, {Shape::Rectangle, 2, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ept::sliding_extrema(s.values(), 0), std::invalid_argument);
}

}
