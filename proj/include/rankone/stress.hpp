#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "rankone/energy.hpp"
#include "rankone/grid.hpp"

namespace rankone {

/// Principal Cauchy stresses and the scalar Kirchhoff split at one state.
struct StressState {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double tau_iso = 0.0;  // t h'(t), half the Kirchhoff stress difference
  double tau_vol = 0.0;  // z f'(z), the spherical Kirchhoff stress
  double det_D_sigma = 0.0;
};

inline StressState principal_cauchy(const SplitEnergy& e, const SingularPair& p) {
  const SplitCoordinates c = to_coordinates(p);
  const Jet2 h = e.h_jet(c.t);
  const Jet2 f = e.f_jet(c.z);
  const double iso = h.d1 / (p.lambda2 * p.lambda2);
  StressState s;
  s.sigma1 = iso + f.d1;
  s.sigma2 = -iso + f.d1;
  s.tau_iso = c.t * h.d1;
  s.tau_vol = c.z * f.d1;
  s.det_D_sigma = 4.0 * f.d2 / (p.lambda2 * p.lambda2) * (c.t * h.d2 + h.d1);
  return s;
}

/// det of the Jacobian of (sigma1, sigma2) with respect to (lambda1, lambda2).
inline double stress_jacobian_det(const SplitEnergy& e, const SingularPair& p) {
  return principal_cauchy(e, p).det_D_sigma;
}

enum class Invertibility { LocallyInvertible, NotCertified, Degenerate };

inline const char* to_string(Invertibility v) {
  switch (v) {
    case Invertibility::LocallyInvertible: return "LocallyInvertible";
    case Invertibility::NotCertified: return "NotCertified";
    case Invertibility::Degenerate: return "Degenerate";
  }
  return "?";
}

struct InvertibilityResult {
  Invertibility verdict = Invertibility::NotCertified;
  std::string reason;
  std::string variable;      // "z" for f'', "t" for t h'' + h'
  double witness = 1.0;      // offending point closest to the reference state
  double witness_value = 0.0;
  double min_f2 = std::numeric_limits<double>::infinity();
  double min_f2_at = 1.0;
  double min_th = std::numeric_limits<double>::infinity();
  double min_th_at = 1.0;
};

/// Local invertibility of the Cauchy stress-stretch law, requiring f'' > tol
/// on the z grid and t h'' + h' > tol on the t grid.
inline InvertibilityResult invertibility_verdict(const SplitEnergy& e, const Grid& t_grid, const Grid& z_grid,
                                                 double tol = 1e-8) {
  InvertibilityResult r;
  double best_f = std::numeric_limits<double>::infinity();
  double best_t = std::numeric_limits<double>::infinity();
  double f_witness = 1.0, f_value = 0.0, t_witness = 1.0, t_value = 0.0;
  for (double z : z_grid.points()) {
    const double v = e.f_jet(z).d2;
    if (v < r.min_f2) {
      r.min_f2 = v;
      r.min_f2_at = z;
    }
    if (v <= -tol && std::abs(std::log(z)) < best_f) {
      best_f = std::abs(std::log(z));
      f_witness = z;
      f_value = v;
    }
  }
  for (double t : t_grid.points()) {
    const Jet2 h = e.h_jet(t);
    const double v = t * h.d2 + h.d1;
    if (v < r.min_th) {
      r.min_th = v;
      r.min_th_at = t;
    }
    if (v <= -tol && std::abs(std::log(t)) < best_t) {
      best_t = std::abs(std::log(t));
      t_witness = t;
      t_value = v;
    }
  }
  if (std::isfinite(best_f)) {
    r.verdict = Invertibility::Degenerate;
    r.reason = "f'' < 0";
    r.variable = "z";
    r.witness = f_witness;
    r.witness_value = f_value;
  } else if (std::isfinite(best_t)) {
    r.verdict = Invertibility::Degenerate;
    r.reason = "t h'' + h' < 0";
    r.variable = "t";
    r.witness = t_witness;
    r.witness_value = t_value;
  } else if (r.min_f2 > tol && r.min_th > tol) {
    r.verdict = Invertibility::LocallyInvertible;
    r.reason = "f uniformly convex and t h'' + h' > 0 on the grids";
  } else {
    r.verdict = Invertibility::NotCertified;
    r.reason = r.min_f2 <= tol ? "f'' not bounded away from zero" : "t h'' + h' not bounded away from zero";
  }
  return r;
}

/// Shear and bulk modulus of the linearization at the identity.
struct InfinitesimalModuli {
  double mu = 0.0;
  double kappa = 0.0;
  double lame_lambda = 0.0;
  bool stress_free = false;
};

inline InfinitesimalModuli infinitesimal_moduli(const SplitEnergy& e) {
  const Jet2 h = e.h_jet(1.0);
  const Jet2 f = e.f_jet(1.0);
  InfinitesimalModuli m;
  m.mu = h.d2;
  m.kappa = f.d2;
  m.lame_lambda = m.kappa - m.mu;
  m.stress_free = std::abs(f.d1) < 1e-9;
  return m;
}

enum class LinearRankOne { Strict, RankOneConvex, Not };

inline const char* to_string(LinearRankOne v) {
  switch (v) {
    case LinearRankOne::Strict: return "Strict";
    case LinearRankOne::RankOneConvex: return "RankOneConvex";
    case LinearRankOne::Not: return "Not";
  }
  return "?";
}

/// W_lin(xi⊗eta) = mu/2 |xi|^2 |eta|^2 + kappa/2 <xi, eta>^2 is nonnegative iff
/// mu >= 0 and mu + kappa >= 0.
inline LinearRankOne linear_rank_one_check(double mu, double kappa) {
  const double sum = mu + kappa;
  if (mu > 0.0 && sum > 0.0) return LinearRankOne::Strict;
  if (mu >= 0.0 && sum >= 0.0) return LinearRankOne::RankOneConvex;
  return LinearRankOne::Not;
}

}  // namespace rankone
