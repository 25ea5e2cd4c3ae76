#pragma once

#include <cmath>
#include <numbers>

#include "rankone/error.hpp"

namespace rankone {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  static Vec2 polar(double angle) { return {std::cos(angle), std::sin(angle)}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
  /// Counter-clockwise rotation by `angle`.
  static Mat2 rotation(double angle) {
    const double co = std::cos(angle);
    const double si = std::sin(angle);
    return {co, -si, si, co};
  }

  double operator()(int i, int j) const {
    if (i == 0) return j == 0 ? a : b;
    return j == 0 ? c : d;
  }
  double& operator()(int i, int j) {
    if (i == 0) return j == 0 ? a : b;
    return j == 0 ? c : d;
  }

  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  double norm2() const { return a * a + b * b + c * c + d * d; }
  double norm() const { return std::sqrt(norm2()); }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const {
    const double k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }

  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Vec2 operator*(const Mat2& m, Vec2 v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Frobenius inner product.
inline double inner(const Mat2& x, const Mat2& y) { return x.a * y.a + x.b * y.b + x.c * y.c + x.d * y.d; }

/// xi ⊗ eta, entries xi_i eta_j.
inline Mat2 outer(Vec2 xi, Vec2 eta) { return {xi.x * eta.x, xi.x * eta.y, xi.y * eta.x, xi.y * eta.y}; }

struct SingularPair {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  friend bool operator==(const SingularPair&, const SingularPair&) = default;
};

struct Svd2 {
  SingularPair sigma;      // lambda1 >= lambda2 > 0
  double theta_left = 0.0;
  double theta_right = 0.0;

  Mat2 reconstruct() const {
    return Mat2::rotation(theta_left) * Mat2::diag(sigma.lambda1, sigma.lambda2) * Mat2::rotation(theta_right);
  }
};

/// Closed-form SVD of F in GL+(2): F = R(theta_left) diag(l1, l2) R(theta_right).
///
/// Writes F as a conformal part (E, H) plus an anticonformal part (P, G);
/// l1 = |conformal| + |anticonformal| and l2 = det F / l1.
inline Svd2 svd2(const Mat2& F) {
  const double det = F.det();
  if (!(det > 0.0)) throw NonPositiveDeterminant("det F = " + std::to_string(det) + " is not positive");
  const double e = 0.5 * (F.a + F.d);
  const double p = 0.5 * (F.a - F.d);
  const double g = 0.5 * (F.c + F.b);
  const double h = 0.5 * (F.c - F.b);
  const double q = std::hypot(e, h);
  const double r = std::hypot(p, g);
  const double l1 = q + r;
  const double a1 = std::atan2(g, p);
  const double a2 = std::atan2(h, e);
  Svd2 out;
  out.sigma = {l1, det / l1};
  out.theta_right = 0.5 * (a2 - a1);
  out.theta_left = 0.5 * (a2 + a1);
  return out;
}

}  // namespace rankone
