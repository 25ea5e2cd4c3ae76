#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "rankone/error.hpp"
#include "rankone/expr.hpp"
#include "rankone/grid.hpp"

namespace rankone {

/// Where an infimum was found: at an interior stationary point or at one end
/// of the truncated domain, standing in for x -> 0+ or x -> infinity.
enum class Limit { Interior, Lower, Upper };

inline const char* to_string(Limit l) {
  switch (l) {
    case Limit::Interior: return "interior";
    case Limit::Lower: return "lower";
    case Limit::Upper: return "upper";
  }
  return "?";
}

struct InfimumResult {
  double value = 0.0;       // -inf when unbounded below
  double evaluated = 0.0;   // finite value at attained_at, equal to value unless unbounded
  double attained_at = 1.0;
  Limit limit = Limit::Interior;
  bool unbounded = false;
  std::vector<std::pair<std::size_t, double>> margin_history;  // (grid points, best value)
};

namespace detail {

// x^2 e''(x) at x; any non-finite part of the jet is an error
inline double weighted_second(const Expr& e, double x) {
  const Jet2 j = e.eval_jet2(x);
  const double v = x * x * j.d2;
  if (!j.finite() || !std::isfinite(v)) {
    throw NonFiniteError("'" + e.source() + "' has no finite second derivative at " + e.variable() + " = " +
                         std::to_string(x));
  }
  return v;
}

}  // namespace detail

/// inf of x^2 e''(x) over [lo, hi], computed as the minimum of
/// s -> e^{2s} e''(e^s) on `levels` nested uniform grids in s (finest 8193
/// points), polished by golden section inside the best bracket and located
/// by bisection on the slope there.
///
/// A minimum on the boundary is reported with a Limit marker. It becomes -inf
/// when it lies below -1e12, or when the per-decade decrease towards the
/// boundary does not shrink by at least half from one decade to the next.
inline InfimumResult infimum_weighted_second(const Expr& e, double lo = 1e-6, double hi = 1e6, int levels = 4) {
  if (!(lo > 0.0) || !(lo < hi)) throw DomainError("infimum domain must satisfy 0 < lo < hi");
  if (levels < 1 || levels > 8) throw InputError("levels must lie in [1, 8]");

  constexpr std::size_t kFinest = 8193;
  const double s_lo = std::log(lo);
  const double s_hi = std::log(hi);
  const double ds = (s_hi - s_lo) / static_cast<double>(kFinest - 1);
  auto x_at = [&](std::size_t i) {
    if (i == 0) return lo;
    if (i + 1 == kFinest) return hi;
    return std::exp(s_lo + ds * static_cast<double>(i));
  };

  std::vector<double> phi(kFinest);
  for (std::size_t i = 0; i < kFinest; ++i) phi[i] = detail::weighted_second(e, x_at(i));

  InfimumResult out;
  std::size_t best = 0;
  for (int level = 0; level < levels; ++level) {
    const std::size_t stride = std::size_t{1} << (levels - 1 - level);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < kFinest; i += stride) {
      if (phi[i] < phi[arg]) arg = i;
    }
    out.margin_history.emplace_back((kFinest - 1) / stride + 1, phi[arg]);
    best = arg;
  }

  if (best == 0 || best + 1 == kFinest) {
    out.limit = best == 0 ? Limit::Lower : Limit::Upper;
    out.attained_at = x_at(best);
    out.value = phi[best];
    const double decade = std::numbers::ln10;
    if (s_hi - s_lo >= 2.0 * decade) {
      const double dir = best == 0 ? 1.0 : -1.0;
      const double s_edge = best == 0 ? s_lo : s_hi;
      const double v1 = detail::weighted_second(e, std::exp(s_edge + dir * decade));
      const double v2 = detail::weighted_second(e, std::exp(s_edge + 2.0 * dir * decade));
      const double near = v1 - out.value;
      const double far = v2 - v1;
      if (near > 0.0 && far > 0.0 && near >= 0.5 * far) out.unbounded = true;
    }
    if (out.value < -1e12) out.unbounded = true;
    out.evaluated = out.value;
    if (out.unbounded) out.value = -std::numeric_limits<double>::infinity();
    return out;
  }

  // golden section on [s_{best-1}, s_{best+1}]
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = s_lo + ds * static_cast<double>(best - 1);
  double b = s_lo + ds * static_cast<double>(best + 1);
  auto g = [&](double s) { return detail::weighted_second(e, std::exp(s)); };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > 1e-10 * std::max(1.0, std::abs(a))) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  double s_star = gc < gd ? c : d;
  double v_star = std::min(gc, gd);

  // Values alone pin the minimizer down to ~sqrt(eps); bisect on the slope
  // for the location when the grid bracket shows a sign change.
  auto slope = [&](double s) {
    constexpr double h = 1e-5;
    return (-g(s + 2 * h) + 8 * g(s + h) - 8 * g(s - h) + g(s - 2 * h)) / (12 * h);
  };
  double lo_s = s_lo + ds * static_cast<double>(best - 1);
  double hi_s = s_lo + ds * static_cast<double>(best + 1);
  if (slope(lo_s) < 0.0 && slope(hi_s) > 0.0) {
    for (int it = 0; it < 80 && hi_s - lo_s > 1e-14 * std::max(1.0, std::abs(lo_s)); ++it) {
      const double mid = 0.5 * (lo_s + hi_s);
      (slope(mid) < 0.0 ? lo_s : hi_s) = mid;
    }
    const double s_root = 0.5 * (lo_s + hi_s);
    const double v_root = g(s_root);
    if (v_root <= v_star + Margin::kNoise * std::max(1.0, std::abs(v_star))) {
      s_star = s_root;
      v_star = std::min(v_root, v_star);
    }
  }

  if (v_star < phi[best]) {
    out.value = v_star;
    out.attained_at = std::exp(s_star);
  } else {
    out.value = phi[best];
    out.attained_at = x_at(best);
  }
  out.evaluated = out.value;
  out.limit = Limit::Interior;
  return out;
}

enum class Convexity { Convex, NonConvex, Marginal };

inline const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::Convex: return "Convex";
    case Convexity::NonConvex: return "NonConvex";
    case Convexity::Marginal: return "Marginal";
  }
  return "?";
}

struct ConvexityResult {
  Convexity kind = Convexity::Convex;
  double witness = 1.0;         // point with the smallest second derivative
  double min_second = 0.0;      // e'' there
  std::size_t samples = 0;
};

/// Sampled convexity of e on a log grid over [lo, hi], judged on e'' itself.
inline ConvexityResult convexity_verdict(const Expr& e, double lo, double hi, std::size_t n_samples,
                                         double tol_abs = 1e-10) {
  const Grid grid = Grid::log(lo, hi, n_samples);
  ConvexityResult out;
  out.samples = n_samples;
  out.min_second = std::numeric_limits<double>::infinity();
  for (double x : grid.points()) {
    const Jet2 j = e.eval_jet2(x);
    if (!j.finite()) {
      throw NonFiniteError("'" + e.source() + "' is not finite at " + std::to_string(x));
    }
    if (j.d2 < out.min_second) {
      out.min_second = j.d2;
      out.witness = x;
    }
  }
  if (out.min_second < -tol_abs) {
    out.kind = Convexity::NonConvex;
  } else if (out.min_second < 0.0) {
    out.kind = Convexity::Marginal;
  } else {
    out.kind = Convexity::Convex;
  }
  return out;
}

}  // namespace rankone
