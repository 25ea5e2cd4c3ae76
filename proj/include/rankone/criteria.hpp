#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankone/energy.hpp"
#include "rankone/grid.hpp"
#include "rankone/scalar_inf.hpp"

namespace rankone {

enum class ConditionId {
  KS_i, KS_ii, KS_iii, KS_iv, KS_v,
  A, B, C, D,
  Main1, Main2, Main3, Main4,
  Nec_a, Nec_b, Nec_c, Nec_d, Nec_e, CorollaryBC,
  FConvex, HConvex,
};

inline const char* to_string(ConditionId id) {
  switch (id) {
    case ConditionId::KS_i: return "KS_i";
    case ConditionId::KS_ii: return "KS_ii";
    case ConditionId::KS_iii: return "KS_iii";
    case ConditionId::KS_iv: return "KS_iv";
    case ConditionId::KS_v: return "KS_v";
    case ConditionId::A: return "A";
    case ConditionId::B: return "B";
    case ConditionId::C: return "C";
    case ConditionId::D: return "D";
    case ConditionId::Main1: return "Main1";
    case ConditionId::Main2: return "Main2";
    case ConditionId::Main3: return "Main3";
    case ConditionId::Main4: return "Main4";
    case ConditionId::Nec_a: return "Nec_a";
    case ConditionId::Nec_b: return "Nec_b";
    case ConditionId::Nec_c: return "Nec_c";
    case ConditionId::Nec_d: return "Nec_d";
    case ConditionId::Nec_e: return "Nec_e";
    case ConditionId::CorollaryBC: return "CorollaryBC";
    case ConditionId::FConvex: return "FConvex";
    case ConditionId::HConvex: return "HConvex";
  }
  return "?";
}

using Witness = std::vector<std::pair<std::string, double>>;

struct ConditionReport {
  ConditionId id = ConditionId::A;
  Verdict verdict = Verdict::Holds;
  double worst_margin = std::numeric_limits<double>::infinity();
  Witness witness;
  std::size_t samples_used = 0;
  double tolerance = 1e-8;
  std::string detail;
};

enum class Overall { RankOneConvex, NotRankOneConvex, Inconclusive };
enum class Route { KS, Voliso, MainTheorem, Classification };

inline const char* to_string(Overall o) {
  switch (o) {
    case Overall::RankOneConvex: return "RankOneConvex";
    case Overall::NotRankOneConvex: return "NotRankOneConvex";
    case Overall::Inconclusive: return "Inconclusive";
  }
  return "?";
}

inline const char* to_string(Route r) {
  switch (r) {
    case Route::KS: return "KS";
    case Route::Voliso: return "Voliso";
    case Route::MainTheorem: return "MainTheorem";
    case Route::Classification: return "Classification";
  }
  return "?";
}

struct RankOneVerdict {
  Overall overall = Overall::Inconclusive;
  std::vector<ConditionReport> reports;
  Route route = Route::MainTheorem;
  std::optional<InfimumResult> h0;
  std::optional<InfimumResult> f0;

  const ConditionReport* find(ConditionId id) const {
    for (const auto& r : reports) {
      if (r.id == id) return &r;
    }
    return nullptr;
  }
};

inline Overall combine(const std::vector<ConditionReport>& reports) {
  bool all_hold = true;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Fails || r.verdict == Verdict::Unbounded) return Overall::NotRankOneConvex;
    if (r.verdict != Verdict::Holds) all_hold = false;
  }
  return all_hold ? Overall::RankOneConvex : Overall::Inconclusive;
}

/// Grids and tolerances shared by every check.
struct CheckOptions {
  Grid t_grid = Grid::log(1e-4, 1e4, 4001);
  Grid z_grid = Grid::log(1e-4, 1e4, 4001);
  Grid ks_grid = Grid::log(1e-2, 1e2, 401);
  double tol = 1e-8;
  double inf_lo = 1e-6;
  double inf_hi = 1e6;
  int inf_levels = 4;
};

namespace detail {

// Tracks the smallest margin seen and where.
class WorstTracker {
 public:
  WorstTracker(ConditionId id, double tol) {
    report_.id = id;
    report_.tolerance = tol;
  }

  void add(const Margin& m, Witness witness) { add_value(m.resolved(), std::move(witness)); }

  void add_value(double margin, Witness witness) {
    if (improves(margin)) {
      report_.worst_margin = margin;
      report_.witness = std::move(witness);
    }
  }

  // same as add, building the (t, z) witness only when it is kept
  void add_tz(const Margin& m, double t, double z) {
    const double margin = m.resolved();
    if (improves(margin)) {
      report_.worst_margin = margin;
      report_.witness = {{"t", t}, {"z", z}};
    }
  }

  ConditionReport finish(std::string detail = {}) {
    report_.verdict = classify_margin(report_.worst_margin, report_.tolerance);
    report_.detail = std::move(detail);
    return std::move(report_);
  }

 private:
  bool improves(double margin) {
    ++report_.samples_used;
    if (std::isnan(report_.worst_margin)) return false;
    return std::isnan(margin) || margin < report_.worst_margin || report_.witness.empty();
  }

  ConditionReport report_;
};

struct HSample {
  double t;
  Jet2 h;
};

inline std::vector<HSample> sample_h(const SplitEnergy& e, const Grid& grid) {
  std::vector<HSample> out;
  for (double t : grid.points()) out.push_back({t, e.h_jet(t)});
  return out;
}

}  // namespace detail

/// a(t), b(t), c(t) of the split characterization, each with its term magnitudes.
struct VolisoCoefficients {
  Margin a, b, c;
};

inline VolisoCoefficients voliso_coefficients(double t, const Jet2& h) {
  const double h1 = h.d1;
  const double h2 = h.d2;
  VolisoCoefficients k;
  k.a = Margin(t * t * (t * t - 1.0) * h1 * h2) - Margin(2.0 * t * h1 * h1);
  k.b = Margin((t * t + 3.0) * h1) + Margin(2.0 * t * (t * t + 1.0) * h2);
  k.c = Margin(4.0 * t * h1) + Margin(4.0 * t * t * h2);
  return k;
}

namespace detail {

// h'(t) with the rounding scale of h' near t = 1
inline Margin slope_margin(double t, const Jet2& h) { return {h.d1, std::abs(h.d1) + t * std::abs(h.d2)}; }

// [2t/(t-1) h' - t^2 h'' + F] or [a + (b - c) F]
inline Margin condition_c(double t, const Jet2& h, const Margin& F) {
  const VolisoCoefficients k = voliso_coefficients(t, h);
  const Margin first = Margin(2.0 * t / (t - 1.0) * h.d1) - Margin(t * t * h.d2) + F;
  const Margin second = k.a + (k.b - k.c) * F;
  return max(first, second);
}

// [2t/(t+1) h' + t^2 h'' - F] or [a + (b + c) F]
inline Margin condition_d(double t, const Jet2& h, const Margin& F) {
  const VolisoCoefficients k = voliso_coefficients(t, h);
  const Margin first = Margin(2.0 * t / (t + 1.0) * h.d1) + Margin(t * t * h.d2) - F;
  const Margin second = k.a + (k.b + k.c) * F;
  return max(first, second);
}

}  // namespace detail

/// Knowles–Sternberg conditions i) to v) on every pair of a square log grid.
inline RankOneVerdict ks_check(const GeneralIsotropicEnergy& g, const Grid& grid, double tol = 1e-8) {
  const std::vector<double> xs = grid.points();
  detail::WorstTracker c1(ConditionId::KS_i, tol);
  detail::WorstTracker c2(ConditionId::KS_ii, tol);
  detail::WorstTracker c3(ConditionId::KS_iii, tol);
  detail::WorstTracker c4(ConditionId::KS_iv, tol);
  detail::WorstTracker c5(ConditionId::KS_v, tol);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[i];
      const double y = xs[j];
      const GPartials p = g(x, y);
      const Witness w{{"x", x}, {"y", y}};
      c1.add_value(std::min(p.gxx.resolved(), p.gyy.resolved()), w);
      if (i == j) {
        const Margin m1 = p.gxx - p.gxy + p.gx / x;
        const Margin m2 = p.gyy - p.gxy + p.gy / y;
        c3.add_value(std::min(m1.resolved(), m2.resolved()), w);
      } else {
        c2.add((x * p.gx - y * p.gy) / (x - y), w);
      }
      const double product = p.gxx.resolved() * p.gyy.resolved();
      if (product < 0.0) continue;
      const Margin root(std::sqrt(product), std::sqrt(p.gxx.scale * p.gyy.scale));
      if (i != j) c4.add(root + p.gxy + (p.gx - p.gy) / (x - y), w);
      c5.add(root - p.gxy + (p.gx + p.gy) / (x + y), w);
    }
  }
  RankOneVerdict v;
  v.route = Route::KS;
  v.reports = {c1.finish("separate convexity"), c2.finish("Baker-Ericksen"), c3.finish("equal singular values"),
               c4.finish(), c5.finish()};
  v.overall = combine(v.reports);
  return v;
}

/// Split conditions A) to D) on the product of the t and z grids.
inline RankOneVerdict voliso_check(const SplitEnergy& e, const Grid& t_grid, const Grid& z_grid, double tol = 1e-8) {
  const std::vector<detail::HSample> hs = detail::sample_h(e, t_grid);
  std::vector<std::pair<double, Margin>> zs;
  for (double z : z_grid.points()) zs.emplace_back(z, Margin(z * z * e.f_jet(z).d2));

  detail::WorstTracker a(ConditionId::A, tol);
  detail::WorstTracker b(ConditionId::B, tol);
  detail::WorstTracker c(ConditionId::C, tol);
  detail::WorstTracker d(ConditionId::D, tol);
  for (const auto& [t, h] : hs) {
    if (t >= 1.0) b.add(detail::slope_margin(t, h), {{"t", t}});
    const Margin th = Margin(t * t * h.d2);
    for (const auto& [z, F] : zs) {
      a.add_tz(th + F, t, z);
      if (t != 1.0) c.add_tz(detail::condition_c(t, h, F), t, z);
      d.add_tz(detail::condition_d(t, h, F), t, z);
    }
  }
  RankOneVerdict v;
  v.route = Route::Voliso;
  v.reports = {a.finish(), b.finish(), c.finish(), d.finish()};
  v.overall = combine(v.reports);
  return v;
}

/// Reduced conditions 1) to 4), with h0 and f0 from the global infima.
inline RankOneVerdict main_check(const SplitEnergy& e, const CheckOptions& opt = {}) {
  RankOneVerdict v;
  v.route = Route::MainTheorem;
  v.h0 = infimum_weighted_second(e.h, opt.inf_lo, opt.inf_hi, opt.inf_levels);
  v.f0 = infimum_weighted_second(e.f, opt.inf_lo, opt.inf_hi, opt.inf_levels);
  const InfimumResult& h0 = *v.h0;
  const InfimumResult& f0 = *v.f0;

  detail::WorstTracker c1(ConditionId::Main1, opt.tol);
  const Witness w1{{"t", h0.attained_at}, {"z", f0.attained_at}};
  std::string detail1;
  if (h0.unbounded || f0.unbounded) {
    c1.add_value(-std::numeric_limits<double>::infinity(), w1);
    detail1 = h0.unbounded ? "h0 unbounded below" : "f0 unbounded below";
  } else {
    c1.add(Margin(h0.value) + Margin(f0.value), w1);
  }

  // conditions 3) and 4) need a number for f0; an unbounded f0 already failed 1)
  const Margin F(f0.evaluated);
  detail::WorstTracker c2(ConditionId::Main2, opt.tol);
  detail::WorstTracker c3(ConditionId::Main3, opt.tol);
  detail::WorstTracker c4(ConditionId::Main4, opt.tol);
  for (const auto& [t, h] : detail::sample_h(e, opt.t_grid)) {
    const Witness w{{"t", t}};
    if (t >= 1.0) c2.add(detail::slope_margin(t, h), w);
    if (t != 1.0) c3.add(detail::condition_c(t, h, F), w);
    c4.add(detail::condition_d(t, h, F), w);
  }
  v.reports = {c1.finish(detail1), c2.finish(), c3.finish(), c4.finish()};
  v.overall = combine(v.reports);
  return v;
}

struct NecessaryResult {
  std::vector<ConditionReport> reports;
  ConvexityResult h_convexity;
  ConvexityResult f_convexity;
};

/// Necessary conditions a) to e) and b(t) + c(t) >= 0. Any Fails is a
/// certificate against rank-one convexity.
inline NecessaryResult necessary_battery(const SplitEnergy& e, const Grid& t_grid, double tol = 1e-8) {
  NecessaryResult out;
  constexpr double kConvexTol = 1e-10;
  out.h_convexity = convexity_verdict(e.h, t_grid.lo, t_grid.hi, t_grid.n, kConvexTol);
  out.f_convexity = convexity_verdict(e.f, t_grid.lo, t_grid.hi, t_grid.n, kConvexTol);

  ConditionReport a;
  a.id = ConditionId::Nec_a;
  a.tolerance = kConvexTol;
  a.samples_used = 2 * t_grid.n;
  const auto& hc = out.h_convexity;
  const auto& fc = out.f_convexity;
  a.worst_margin = std::max(hc.min_second, fc.min_second);
  a.witness = {{"t", hc.witness}, {"z", fc.witness}};
  if (hc.kind == Convexity::Convex || fc.kind == Convexity::Convex) {
    a.verdict = Verdict::Holds;
    a.detail = hc.kind == Convexity::Convex ? "h convex" : "f convex";
  } else if (hc.kind == Convexity::NonConvex && fc.kind == Convexity::NonConvex) {
    a.verdict = Verdict::Fails;
    a.detail = "neither h nor f convex";
  } else {
    a.verdict = Verdict::Marginal;
  }

  detail::WorstTracker b(ConditionId::Nec_b, tol);
  detail::WorstTracker c(ConditionId::Nec_c, tol);
  detail::WorstTracker d(ConditionId::Nec_d, tol);
  detail::WorstTracker ee(ConditionId::Nec_e, tol);
  detail::WorstTracker bc(ConditionId::CorollaryBC, tol);
  for (const auto& [t, h] : detail::sample_h(e, t_grid)) {
    const Witness w{{"t", t}};
    b.add(Margin(h.d2) + Margin(e.f_jet(t).d2), {{"x", t}});
    if (t != 1.0) c.add(detail::slope_margin(t, h) * (t > 1.0 ? 1.0 : -1.0), w);
    d.add(Margin(t * h.d2) + Margin(h.d1), w);
    ee.add(Margin((t + 3.0) * h.d1) + Margin(2.0 * t * (t + 1.0) * h.d2), w);
    const VolisoCoefficients k = voliso_coefficients(t, h);
    bc.add(k.b + k.c, w);
  }
  out.reports = {a, b.finish("h + f convex"), c.finish("h' sign"), d.finish("t h'' + h'"), ee.finish(),
                 bc.finish("b(t) + c(t)")};
  return out;
}

enum class Structure { HadamardK, IdealizedSameH, General };

inline const char* to_string(Structure s) {
  switch (s) {
    case Structure::HadamardK: return "HadamardK";
    case Structure::IdealizedSameH: return "IdealizedSameH";
    case Structure::General: return "General";
  }
  return "?";
}

struct Classification {
  Structure structure = Structure::General;
  double mu = 0.0;     // HadamardK: h - h(1) = mu (K - 1)
  double ratio = 0.0;  // IdealizedSameH: f - f(1) = ratio (h - h(1)), ratio = kappa / (2 mu)
  std::optional<ConvexityResult> convexity;  // of f for HadamardK, of h for IdealizedSameH
  RankOneVerdict verdict;
};

namespace detail {

// Least-squares slope of y against x with the max relative residual.
inline std::pair<double, double> fit_proportional(const std::vector<double>& x, const std::vector<double>& y) {
  double sxx = 0.0;
  double sxy = 0.0;
  double ymax = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    ymax = std::max(ymax, std::abs(y[i]));
  }
  if (!(sxx > 0.0)) return {0.0, std::numeric_limits<double>::infinity()};
  const double slope = sxy / sxx;
  double residual = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) residual = std::max(residual, std::abs(y[i] - slope * x[i]));
  return {slope, residual / std::max(1.0, ymax)};
}

inline ConditionReport convexity_report(ConditionId id, const ConvexityResult& c, const char* var) {
  ConditionReport r;
  r.id = id;
  r.tolerance = 1e-10;
  r.worst_margin = c.min_second;
  r.witness = {{var, c.witness}};
  r.samples_used = c.samples;
  r.verdict = c.kind == Convexity::Convex ? Verdict::Holds
              : c.kind == Convexity::NonConvex ? Verdict::Fails
                                                : Verdict::Marginal;
  r.detail = std::string("second derivative of ") + (id == ConditionId::FConvex ? "f" : "h");
  return r;
}

}  // namespace detail

/// Detects mu K + f(det F) and mu h(t) + kappa/2 h(z) by fitting on 64
/// samples; both reduce rank-one convexity to convexity of a single function.
/// Anything else falls through to main_check.
inline Classification classify_structure(const SplitEnergy& e, const CheckOptions& opt = {}) {
  constexpr double kFitTol = 1e-9;
  const std::vector<double> samples = Grid::log(1e-2, 1e2, 64).points();
  const double h1 = e.h_jet(1.0).value;
  const double f1 = e.f_jet(1.0).value;
  std::vector<double> k_minus_1, h_shift, f_shift;
  for (double s : samples) {
    k_minus_1.push_back(0.5 * (s + 1.0 / s) - 1.0);
    h_shift.push_back(e.h_jet(s).value - h1);
    f_shift.push_back(e.f_jet(s).value - f1);
  }

  Classification out;
  const auto [mu, k_residual] = detail::fit_proportional(k_minus_1, h_shift);
  if (mu > 0.0 && k_residual < kFitTol) {
    out.structure = Structure::HadamardK;
    out.mu = mu;
    out.convexity = convexity_verdict(e.f, opt.z_grid.lo, opt.z_grid.hi, opt.z_grid.n);
  } else {
    const auto [ratio, i_residual] = detail::fit_proportional(h_shift, f_shift);
    if (ratio > 0.0 && i_residual < kFitTol) {
      out.structure = Structure::IdealizedSameH;
      out.ratio = ratio;
      out.convexity = convexity_verdict(e.h, opt.t_grid.lo, opt.t_grid.hi, opt.t_grid.n);
    }
  }

  if (out.structure == Structure::General) {
    out.verdict = main_check(e, opt);
    return out;
  }
  out.verdict.route = Route::Classification;
  if (out.structure == Structure::HadamardK) {
    out.verdict.reports.push_back(detail::convexity_report(ConditionId::FConvex, *out.convexity, "z"));
    // the reduced condition 1) carries the witness for a non-convex f
    const RankOneVerdict reduced = main_check(e, opt);
    out.verdict.reports.push_back(*reduced.find(ConditionId::Main1));
    out.verdict.h0 = reduced.h0;
    out.verdict.f0 = reduced.f0;
  } else {
    out.verdict.reports.push_back(detail::convexity_report(ConditionId::HConvex, *out.convexity, "t"));
  }
  out.verdict.overall = combine(out.verdict.reports);
  return out;
}

}  // namespace rankone
