#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "rankone/error.hpp"

namespace rankone {

enum class Spacing { Log, Linear };

/// One-dimensional sample grid. Log grids are uniform in log10, so a grid
/// symmetric about 1 in decades contains 1 exactly when n is odd.
struct Grid {
  double lo = 1e-4;
  double hi = 1e4;
  std::size_t n = 4001;
  Spacing spacing = Spacing::Log;

  void validate() const {
    if (n < 2) throw DegenerateGrid("grid needs at least two points");
    if (!(lo < hi)) throw DegenerateGrid("grid bounds must satisfy lo < hi");
    if (spacing == Spacing::Log && !(lo > 0.0)) throw DegenerateGrid("log grid needs lo > 0");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DegenerateGrid("grid bounds must be finite");
  }

  double at(std::size_t i) const {
    if (i == 0) return lo;
    if (i + 1 == n) return hi;
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    if (spacing == Spacing::Linear) return lo + (hi - lo) * u;
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    return std::pow(10.0, a + (b - a) * u);
  }

  std::vector<double> points() const {
    validate();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
    return out;
  }

  static Grid log(double lo, double hi, std::size_t n) { return {lo, hi, n, Spacing::Log}; }
  static Grid linear(double lo, double hi, std::size_t n) { return {lo, hi, n, Spacing::Linear}; }
};

/// Running sum that remembers the magnitude of its terms, so an exact
/// cancellation is not mistaken for a small violation.
struct Margin {
  double value = 0.0;
  double scale = 0.0;

  static constexpr double kNoise = 1e3 * std::numeric_limits<double>::epsilon();

  Margin() = default;
  Margin(double v) : value(v), scale(std::abs(v)) {}  // NOLINT: implicit from a single term
  Margin(double v, double s) : value(v), scale(s) {}

  Margin& operator+=(const Margin& m) {
    value += m.value;
    scale += m.scale;
    return *this;
  }
  Margin& operator-=(const Margin& m) {
    value -= m.value;
    scale += m.scale;
    return *this;
  }
  friend Margin operator+(Margin a, const Margin& b) { return a += b; }
  friend Margin operator-(Margin a, const Margin& b) { return a -= b; }
  friend Margin operator*(const Margin& a, double k) { return {a.value * k, a.scale * std::abs(k)}; }
  friend Margin operator*(double k, const Margin& a) { return a * k; }
  friend Margin operator*(const Margin& a, const Margin& b) { return {a.value * b.value, a.scale * b.scale}; }
  friend Margin operator-(const Margin& a) { return {-a.value, a.scale}; }
  friend Margin operator/(const Margin& a, double k) { return {a.value / k, a.scale / std::abs(k)}; }

  /// The value, or exactly zero when it sits inside the rounding band.
  double resolved() const {
    if (std::isnan(value)) return value;
    return std::abs(value) <= kNoise * scale ? 0.0 : value;
  }
};

inline Margin max(const Margin& a, const Margin& b) {
  return a.resolved() >= b.resolved() ? a : b;
}

enum class Verdict { Holds, Fails, Marginal, Unbounded };

inline Verdict classify_margin(double margin, double tol) {
  if (std::isnan(margin)) return Verdict::Fails;
  if (margin < -tol) return Verdict::Fails;
  if (margin < 0.0) return Verdict::Marginal;
  return Verdict::Holds;
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Marginal: return "Marginal";
    case Verdict::Unbounded: return "Unbounded";
  }
  return "?";
}

}  // namespace rankone
