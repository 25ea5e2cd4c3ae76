#pragma once

#include <cmath>

namespace rankone {

/// Degree-2 truncated Taylor jet of a scalar function of one variable:
/// value, first derivative and second derivative at a point.
///
/// Arithmetic follows the truncated product and chain rules. Non-finite
/// intermediates are propagated, never trapped; callers decide what a NaN
/// means in their context.
template <typename Real>
struct BasicJet2 {
  Real value{};
  Real d1{};
  Real d2{};

  static constexpr BasicJet2 constant(Real c) { return {c, Real(0), Real(0)}; }
  static constexpr BasicJet2 variable(Real x) { return {x, Real(1), Real(0)}; }

  bool finite() const { return std::isfinite(value) && std::isfinite(d1) && std::isfinite(d2); }

  friend constexpr bool operator==(const BasicJet2&, const BasicJet2&) = default;
};

using Jet2 = BasicJet2<double>;

namespace detail {

// u -> g(u) given g, g', g'' at u.value
template <typename Real>
constexpr BasicJet2<Real> chain(const BasicJet2<Real>& u, Real g0, Real g1, Real g2) {
  return {g0, g1 * u.d1, g2 * u.d1 * u.d1 + g1 * u.d2};
}

}  // namespace detail

template <typename Real>
constexpr BasicJet2<Real> operator+(const BasicJet2<Real>& a, const BasicJet2<Real>& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2};
}

template <typename Real>
constexpr BasicJet2<Real> operator-(const BasicJet2<Real>& a, const BasicJet2<Real>& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2};
}

template <typename Real>
constexpr BasicJet2<Real> operator-(const BasicJet2<Real>& a) {
  return {-a.value, -a.d1, -a.d2};
}

template <typename Real>
constexpr BasicJet2<Real> operator*(const BasicJet2<Real>& a, const BasicJet2<Real>& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + Real(2) * a.d1 * b.d1 + a.value * b.d2};
}

template <typename Real>
constexpr BasicJet2<Real> reciprocal(const BasicJet2<Real>& v) {
  const Real inv = Real(1) / v.value;
  return detail::chain(v, inv, -inv * inv, Real(2) * inv * inv * inv);
}

template <typename Real>
constexpr BasicJet2<Real> operator/(const BasicJet2<Real>& a, const BasicJet2<Real>& b) {
  return a * reciprocal(b);
}

template <typename Real>
BasicJet2<Real> exp(const BasicJet2<Real>& u) {
  const Real e = std::exp(u.value);
  return detail::chain(u, e, e, e);
}

template <typename Real>
BasicJet2<Real> log(const BasicJet2<Real>& u) {
  const Real inv = Real(1) / u.value;
  // log of a non-positive number is NaN in the value, keep it that way
  return detail::chain(u, std::log(u.value), inv, -inv * inv);
}

template <typename Real>
BasicJet2<Real> sqrt(const BasicJet2<Real>& u) {
  const Real s = std::sqrt(u.value);
  return detail::chain(u, s, Real(0.5) / s, Real(-0.25) / (s * u.value));
}

template <typename Real>
BasicJet2<Real> cosh(const BasicJet2<Real>& u) {
  const Real c = std::cosh(u.value);
  return detail::chain(u, c, std::sinh(u.value), c);
}

template <typename Real>
BasicJet2<Real> sinh(const BasicJet2<Real>& u) {
  const Real s = std::sinh(u.value);
  return detail::chain(u, s, std::cosh(u.value), s);
}

template <typename Real>
BasicJet2<Real> tanh(const BasicJet2<Real>& u) {
  const Real th = std::tanh(u.value);
  const Real sech2 = Real(1) - th * th;
  return detail::chain(u, th, sech2, Real(-2) * th * sech2);
}

template <typename Real>
BasicJet2<Real> acosh(const BasicJet2<Real>& u) {
  const Real x = u.value;
  const Real r = std::sqrt(x * x - Real(1));
  return detail::chain(u, std::acosh(x), Real(1) / r, -x / (r * r * r));
}

/// u^p for a constant exponent. Integer-valued exponents accept negative bases.
template <typename Real>
BasicJet2<Real> pow(const BasicJet2<Real>& u, Real p) {
  if (p == Real(0)) return BasicJet2<Real>::constant(Real(1));
  const Real x = u.value;
  const Real g0 = std::pow(x, p);
  const Real g1 = p * std::pow(x, p - Real(1));
  // p(p-1) vanishes for p = 1; avoid 0 * inf at x = 0
  const Real g2 = (p == Real(1)) ? Real(0) : p * (p - Real(1)) * std::pow(x, p - Real(2));
  return detail::chain(u, g0, g1, g2);
}

/// u^v with a variable exponent, through exp(v log u).
template <typename Real>
BasicJet2<Real> pow(const BasicJet2<Real>& u, const BasicJet2<Real>& v) {
  return exp(v * log(u));
}

}  // namespace rankone
