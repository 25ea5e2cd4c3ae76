#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "rankone/energy.hpp"
#include "rankone/grid.hpp"
#include "rankone/mat2.hpp"

namespace rankone {

struct RankOneDirection {
  Vec2 xi{1.0, 0.0};
  Vec2 eta{1.0, 0.0};

  Mat2 matrix() const { return outer(xi, eta); }
  static RankOneDirection from_angles(double a, double b) { return {Vec2::polar(a), Vec2::polar(b)}; }
};

namespace detail {

inline void require_glplus(const Mat2& F) {
  if (!(F.det() > 0.0)) throw LeftGLplus("finite-difference stencil left GL+(2); reduce the step");
}

// the stencil reaches 4 steps out; det stays above half its value there
inline double default_step(const Mat2& F) {
  const double n = F.norm();
  return std::min(1e-3 * n, 0.125 * F.det() / n);
}

// Richardson extrapolation of the five-point second difference at h and 2h,
// sixth order in h. `at(s)` evaluates the energy s along the line.
template <typename Line>
double second_difference(const Line& at, double w0, double h) {
  const double p1 = at(h), m1 = at(-h), p2 = at(2.0 * h), m2 = at(-2.0 * h);
  const double p4 = at(4.0 * h), m4 = at(-4.0 * h);
  const double fine = (-p2 + 16.0 * p1 - 30.0 * w0 + 16.0 * m1 - m2) / (12.0 * h * h);
  const double coarse = (-p4 + 16.0 * p2 - 30.0 * w0 + 16.0 * m2 - m4) / (48.0 * h * h);
  return (16.0 * fine - coarse) / 15.0;
}

}  // namespace detail

/// Second derivative of s -> W(F + s xi⊗eta) at s = 0 by extrapolated
/// central differences.
template <typename Energy>
double fd_second_derivative(const Energy& W, const Mat2& F, const RankOneDirection& d, double step = 0.0) {
  if (step <= 0.0) step = detail::default_step(F);
  const Mat2 H = d.matrix();
  // det(F + sH) is affine in s, so checking the outer stencil points suffices
  detail::require_glplus(F + (4.0 * step) * H);
  detail::require_glplus(F - (4.0 * step) * H);
  return detail::second_difference([&](double s) { return W(F + s * H); }, W(F), step);
}

inline double fd_second_derivative(const SplitEnergy& e, const Mat2& F, const RankOneDirection& d, double step = 0.0) {
  return fd_second_derivative([&e](const Mat2& G) { return eval_W_matrix(e, G); }, F, d, step);
}

/// Symmetric 2x2 acoustic tensor Q(F, eta).
struct AcousticTensor {
  double q11 = 0.0;
  double q12 = 0.0;
  double q22 = 0.0;
  Mat2 F;
  Vec2 eta;

  double contract(Vec2 xi) const { return q11 * xi.x * xi.x + 2.0 * q12 * xi.x * xi.y + q22 * xi.y * xi.y; }
  double min_eigenvalue() const {
    return 0.5 * (q11 + q22) - std::hypot(0.5 * (q11 - q22), q12);
  }
  double max_abs_eigenvalue() const {
    return std::abs(0.5 * (q11 + q22)) + std::hypot(0.5 * (q11 - q22), q12);
  }
  /// Unit vector achieving min_eigenvalue.
  Vec2 min_eigenvector() const {
    const double angle = 0.5 * std::atan2(2.0 * q12, q11 - q22) + std::numbers::pi / 2.0;
    return Vec2::polar(angle);
  }
};

/// Finite-difference 4x4 Hessian of W in the entries of F, contracted with eta.
/// Diagonal entries are second differences along e_k; mixed entries come from
/// second differences along e_k + e_l by polarization.
template <typename Energy>
AcousticTensor acoustic_tensor(const Energy& W, const Mat2& F, Vec2 eta, double step = 0.0) {
  if (step <= 0.0) step = detail::default_step(F);
  const double w0 = W(F);
  auto second = [&](int k, int l) {
    auto at = [&](double s) {
      Mat2 G = F;
      G(k / 2, k % 2) += s;
      if (l >= 0) G(l / 2, l % 2) += s;
      detail::require_glplus(G);
      return W(G);
    };
    return detail::second_difference(at, w0, step);
  };
  std::array<std::array<double, 4>, 4> hess{};
  for (int k = 0; k < 4; ++k) hess[k][k] = second(k, -1);
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < k; ++l) hess[k][l] = hess[l][k] = 0.5 * (second(k, l) - hess[k][k] - hess[l][l]);
  }
  const double e[2] = {eta.x, eta.y};
  double q[2][2] = {};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) q[i][k] += hess[2 * i + j][2 * k + l] * e[j] * e[l];
      }
    }
  }
  return {q[0][0], 0.5 * (q[0][1] + q[1][0]), q[1][1], F, eta};
}

inline AcousticTensor acoustic_tensor(const SplitEnergy& e, const Mat2& F, Vec2 eta, double step = 0.0) {
  return acoustic_tensor([&e](const Mat2& G) { return eval_W_matrix(e, G); }, F, eta, step);
}

/// psi' and psi'' of the isochoric part written as psi(K), K = (t + 1/t)/2.
struct PsiJet {
  double psi1 = 0.0;
  double psi2 = 0.0;
  bool conformal = false;  // |t - 1| below the chain-rule threshold; psi'' dropped
};

inline PsiJet psi_from_h(double t, const Jet2& h) {
  const double k1 = 0.5 * (1.0 - 1.0 / (t * t));
  const double k2 = 1.0 / (t * t * t);
  PsiJet p;
  if (std::abs(t - 1.0) < 1e-6) {
    // K' vanishes at conformal F, so psi'' carries no weight there
    p.psi1 = h.d2 / k2;
    p.conformal = true;
    return p;
  }
  p.psi1 = h.d1 / k1;
  p.psi2 = (h.d2 - p.psi1 * k2) / (k1 * k1);
  return p;
}

/// Jets of h and f at the singular values of some F.
struct PointJets {
  double t = 1.0;
  double z = 1.0;
  PsiJet psi;
  Jet2 f;
};

inline PointJets point_jets(const SplitEnergy& e, const SingularPair& p) {
  PointJets j;
  j.t = std::max(p.lambda1, p.lambda2) / std::min(p.lambda1, p.lambda2);
  j.z = p.lambda1 * p.lambda2;
  j.psi = psi_from_h(j.t, e.h_jet(j.t));
  j.f = e.f_jet(j.z);
  return j;
}

struct SecondDerivativeTerms {
  double curvature = 0.0;  // psi''(K) K'^2
  double slope = 0.0;      // psi'(K) K''
  double volumetric = 0.0; // f''(det F) (det F)^2 <F^-1 xi, eta>^2
  double scale = 0.0;      // magnitude of the contributing products
  double value() const { return curvature + slope + volumetric; }
};

/// D^2 W(F).(xi⊗eta, xi⊗eta) in closed form through the distortion K = |F|^2/(2 det F).
inline SecondDerivativeTerms second_derivative_terms(const PointJets& j, const Mat2& F, Vec2 xi, Vec2 eta) {
  const double d = F.det();
  const double n = F.norm2();
  const Mat2 H = outer(xi, eta);
  const double a = inner(F, H);
  const double b = dot(F.inverse() * xi, eta);
  const double hh = H.norm2();
  const double k1 = (a - 0.5 * n * b) / d;
  const double k2 = (hh - 2.0 * a * b + n * b * b) / d;
  SecondDerivativeTerms s;
  s.curvature = j.psi.psi2 * k1 * k1;
  s.slope = j.psi.psi1 * k2;
  s.volumetric = j.f.d2 * d * d * b * b;
  s.scale = std::abs(s.curvature) + std::abs(j.psi.psi1) * (hh + 2.0 * std::abs(a * b) + n * b * b) / d +
            std::abs(s.volumetric);
  return s;
}

inline SecondDerivativeTerms second_derivative_terms(const SplitEnergy& e, const Mat2& F, const RankOneDirection& dir) {
  return second_derivative_terms(point_jets(e, svd2(F).sigma), F, dir.xi, dir.eta);
}

inline double analytic_second_derivative(const SplitEnergy& e, const Mat2& F, const RankOneDirection& dir) {
  return second_derivative_terms(e, F, dir).value();
}

/// Acoustic tensor from the closed form by polarization in xi.
inline AcousticTensor analytic_acoustic_tensor(const PointJets& j, const Mat2& F, Vec2 eta) {
  const double q11 = second_derivative_terms(j, F, {1.0, 0.0}, eta).value();
  const double q22 = second_derivative_terms(j, F, {0.0, 1.0}, eta).value();
  const double qs = second_derivative_terms(j, F, {1.0, 1.0}, eta).value();
  return {q11, 0.5 * (qs - q11 - q22), q22, F, eta};
}

inline AcousticTensor analytic_acoustic_tensor(const SplitEnergy& e, const Mat2& F, Vec2 eta) {
  return analytic_acoustic_tensor(point_jets(e, svd2(F).sigma), F, eta);
}

struct BruteForceOptions {
  std::size_t n_lambda = 20;
  double lambda_lo = 1e-2;
  double lambda_hi = 1e2;
  std::size_t n_rotations = 8;
  std::size_t n_angles = 24;
  std::size_t refinements = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
};

struct BruteForceResult {
  bool violation = false;
  Mat2 F = Mat2::identity();
  Vec2 xi{1.0, 0.0};
  Vec2 eta{1.0, 0.0};
  double value = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  std::size_t samples = 0;
};

namespace detail {

struct Candidate {
  double l1, l2, alpha, beta, eta_angle;
};

// min over unit xi of the rank-one second derivative at the candidate; the
// scale covers every polarization term so rounding in huge entries of Q is
// not mistaken for a negative eigenvalue
inline BruteForceResult evaluate_candidate(const SplitEnergy& e, const Candidate& c, const PointJets* cached) {
  const Mat2 F = Mat2::rotation(c.alpha) * Mat2::diag(c.l1, c.l2) * Mat2::rotation(c.beta);
  const PointJets j = cached ? *cached : point_jets(e, {c.l1, c.l2});
  const Vec2 eta = Vec2::polar(c.eta_angle);
  const SecondDerivativeTerms s11 = second_derivative_terms(j, F, {1.0, 0.0}, eta);
  const SecondDerivativeTerms s22 = second_derivative_terms(j, F, {0.0, 1.0}, eta);
  const SecondDerivativeTerms s12 = second_derivative_terms(j, F, {1.0, 1.0}, eta);
  const AcousticTensor q{s11.value(), 0.5 * (s12.value() - s11.value() - s22.value()), s22.value(), F, eta};
  BruteForceResult r;
  r.F = F;
  r.eta = eta;
  r.xi = q.min_eigenvector();
  r.scale = s11.scale + s22.scale + s12.scale;
  r.value = Margin(q.min_eigenvalue(), r.scale).resolved();
  r.samples = 1;
  return r;
}

}  // namespace detail

/// Grid search over F = R(alpha) diag(l1, l2) R(beta) and eta, exact in xi,
/// followed by seeded random refinement around the worst sample.
inline BruteForceResult brute_force_check(const SplitEnergy& e, const BruteForceOptions& opt = {}) {
  const std::vector<double> lambdas = Grid::log(opt.lambda_lo, opt.lambda_hi, opt.n_lambda).points();
  const double pi = std::numbers::pi;
  BruteForceResult best;
  detail::Candidate best_c{1.0, 1.0, 0.0, 0.0, 0.0};
  std::size_t samples = 0;
  auto consider = [&](const BruteForceResult& r, const detail::Candidate& c) {
    ++samples;
    if (r.value < best.value) {
      best = r;
      best_c = c;
    }
  };
  for (double l1 : lambdas) {
    for (double l2 : lambdas) {
      const PointJets j = point_jets(e, {l1, l2});
      for (std::size_t ia = 0; ia < opt.n_rotations; ++ia) {
        for (std::size_t ib = 0; ib < opt.n_rotations; ++ib) {
          for (std::size_t ie = 0; ie < opt.n_angles; ++ie) {
            const detail::Candidate c{l1, l2, pi * static_cast<double>(ia) / static_cast<double>(opt.n_rotations),
                                      pi * static_cast<double>(ib) / static_cast<double>(opt.n_rotations),
                                      pi * static_cast<double>(ie) / static_cast<double>(opt.n_angles)};
            consider(detail::evaluate_candidate(e, c, &j), c);
          }
        }
      }
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double log_lo = std::log(opt.lambda_lo);
  const double log_hi = std::log(opt.lambda_hi);
  for (std::size_t k = 0; k < opt.refinements; ++k) {
    const double radius = 0.5 * std::pow(1e-3, static_cast<double>(k) / static_cast<double>(opt.refinements));
    detail::Candidate c = best_c;
    c.l1 = std::exp(std::clamp(std::log(c.l1) + radius * unit(rng), log_lo, log_hi));
    c.l2 = std::exp(std::clamp(std::log(c.l2) + radius * unit(rng), log_lo, log_hi));
    c.alpha += radius * unit(rng);
    c.beta += radius * unit(rng);
    c.eta_angle += radius * unit(rng);
    consider(detail::evaluate_candidate(e, c, nullptr), c);
  }
  best.samples = samples;
  best.violation = best.value < -opt.tol;
  return best;
}

}  // namespace rankone
