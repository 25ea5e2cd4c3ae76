#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rankone/error.hpp"
#include "rankone/expr.hpp"
#include "rankone/grid.hpp"
#include "rankone/mat2.hpp"

namespace rankone {

using Params = std::map<std::string, double>;

enum class CatalogId {
  Example1,
  Example2,
  Distortion,
  KEnergy,
  Fluid,
  Hencky,
  ExpHencky,
  ExpHenckyIso,
  ExpHenckyCoupled,
  Idealized,
};

/// Isochoric ratio t = l1/l2 and determinant z = l1 l2.
struct SplitCoordinates {
  double t = 1.0;
  double z = 1.0;
};

inline SplitCoordinates to_coordinates(const SingularPair& p) {
  if (!(p.lambda1 > 0.0) || !(p.lambda2 > 0.0)) throw DomainError("singular values must be positive");
  return {p.lambda1 / p.lambda2, p.lambda1 * p.lambda2};
}

inline SingularPair to_singular(const SplitCoordinates& c) {
  if (!(c.t > 0.0) || !(c.z > 0.0)) throw DomainError("t and z must be positive");
  return {std::sqrt(c.z * c.t), std::sqrt(c.z / c.t)};
}

/// Value and all first and second partials of g(x, y), each carrying the
/// magnitude of the terms it was assembled from.
struct GPartials {
  Margin g, gx, gy, gxx, gxy, gyy;
};

/// Isotropic energy written in singular values, W(F) = g(l1, l2).
struct GeneralIsotropicEnergy {
  std::string name;
  std::function<GPartials(double, double)> eval;

  GPartials operator()(double x, double y) const { return eval(x, y); }
};

/// W(F) = h(l1/l2) + f(l1 l2) with h(t) = h(1/t).
struct SplitEnergy {
  Expr h;
  Expr f;
  std::string name;
  std::optional<CatalogId> catalog_id;
  Params params;

  Jet2 h_jet(double t) const { return eval_jet2(h, t); }
  Jet2 f_jet(double z) const { return eval_jet2(f, z); }
};

namespace detail {

// Log-spaced points on [1e-3, 1e3] used for the symmetry check of h.
inline std::vector<double> symmetry_samples() { return Grid::log(1e-3, 1e3, 64).points(); }

inline void validate_symmetry(const Expr& h) {
  double worst_t = 1.0;
  double worst_residual = 0.0;
  double worst_relative = 0.0;
  for (double t : symmetry_samples()) {
    const double a = eval_jet2(h, t).value;
    const double r = std::abs(a - eval_jet2(h, 1.0 / t).value);
    const double relative = r / (1.0 + std::abs(a));
    if (relative > worst_relative) {
      worst_relative = relative;
      worst_residual = r;
      worst_t = t;
    }
  }
  if (worst_relative > 1e-9) throw SymmetryViolation(worst_t, worst_residual);
  const double slope = eval_jet2(h, 1.0).d1;
  if (!(std::abs(slope) < 1e-9)) throw SymmetryViolation(1.0, std::abs(slope));
}

}  // namespace detail

/// Parses and validates a split energy. Throws SymmetryViolation when h(t) != h(1/t).
inline SplitEnergy make_split(std::string_view h_source, std::string_view f_source, std::string name = "custom") {
  SplitEnergy e;
  e.h = Expr::parse(h_source, "t");
  e.f = Expr::parse(f_source, "z");
  e.name = std::move(name);
  detail::validate_symmetry(e.h);
  return e;
}

inline double eval_W(const SplitEnergy& e, const SingularPair& p) {
  const SplitCoordinates c = to_coordinates(p);
  return e.h_jet(c.t).value + e.f_jet(c.z).value;
}

inline double eval_W_matrix(const SplitEnergy& e, const Mat2& F) { return eval_W(e, svd2(F).sigma); }

/// The isochoric part h(l1/l2) alone.
inline double eval_W_iso(const SplitEnergy& e, const SingularPair& p) { return e.h_jet(to_coordinates(p).t).value; }

/// The volumetric part f(l1 l2) alone.
inline double eval_W_vol(const SplitEnergy& e, const SingularPair& p) { return e.f_jet(to_coordinates(p).z).value; }

/// g(x, y) = h(x/y) + f(xy) with partials from the chain rule.
inline GeneralIsotropicEnergy as_general(const SplitEnergy& e) {
  GeneralIsotropicEnergy g;
  g.name = e.name;
  g.eval = [e](double x, double y) {
    const Jet2 h = e.h_jet(x / y);
    const Jet2 f = e.f_jet(x * y);
    const double y2 = y * y;
    const double y3 = y2 * y;
    GPartials p;
    p.g = Margin(h.value) + Margin(f.value);
    p.gx = Margin(h.d1 / y) + Margin(y * f.d1);
    p.gy = Margin(-x * h.d1 / y2) + Margin(x * f.d1);
    p.gxx = Margin(h.d2 / y2) + Margin(y2 * f.d2);
    p.gxy = Margin(-h.d1 / y2) + Margin(-x * h.d2 / y3) + Margin(f.d1) + Margin(x * y * f.d2);
    p.gyy = Margin(2.0 * x * h.d1 / y3) + Margin(x * x * h.d2 / (y2 * y2)) + Margin(x * x * f.d2);
    return p;
  };
  return g;
}

// ---------------------------------------------------------------------------
// Catalog

struct CatalogEntry {
  CatalogId id;
  const char* key;
  const char* h;
  const char* f;
  std::vector<std::pair<std::string, double>> defaults;
  const char* description;
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {CatalogId::Example1, "example1", "exp((1/10)*log(t)^2)", "(1/60)*(z - 1/z)^2", {},
       "rank-one convex energy with non rank-one convex isochoric part"},
      {CatalogId::Example2, "example2", "(6/5)*(t - 1/t)^2", "(z - 1/z)^4 - (z - 1/z)^2", {},
       "rank-one convex energy with double-well volumetric part"},
      {CatalogId::Distortion, "distortion", "{mu}*(1/2)*(t + 1/t)", "0", {{"mu", 1.0}},
       "pure distortion energy mu*K"},
      {CatalogId::KEnergy, "k-energy", "{mu}*(1/2)*(t + 1/t)", "({kappa}/2)*(z - 1)^2", {{"mu", 1.0}, {"kappa", 1.0}},
       "generalized Hadamard energy mu*K + f(det F)"},
      {CatalogId::Fluid, "fluid", "0", "({kappa}/2)*(z - 1)^2", {{"kappa", 1.0}}, "purely volumetric energy"},
      {CatalogId::Hencky, "hencky", "({mu}/2)*log(t)^2", "({kappa}/2)*log(z)^2", {{"mu", 1.0}, {"kappa", 1.0}},
       "planar quadratic Hencky energy"},
      {CatalogId::ExpHencky, "exp-hencky", "({mu}/{k})*exp(({k}/2)*log(t)^2)",
       "({kappa}/(2*{k_hat}))*exp({k_hat}*log(z)^2)", {{"mu", 1.0}, {"kappa", 1.0}, {"k", 1.0}, {"k_hat", 1.0}},
       "planar exponentiated Hencky energy"},
      {CatalogId::ExpHenckyIso, "exp-hencky-iso", "{mu}*exp({k}*log(t)^2)", "0", {{"mu", 1.0}, {"k", 0.1}},
       "isochoric exponentiated Hencky energy"},
      {CatalogId::ExpHenckyCoupled, "exp-hencky-coupled", "exp((1/10)*log(t)^2)", "(1/1000)*(z - 1/z)^2", {},
       "isochoric exponentiated Hencky energy with weak volumetric coupling"},
      {CatalogId::Idealized, "idealized", "{mu}*((1/2)*(t + 1/t) - 1)", "({kappa}/2)*((1/2)*(z + 1/z) - 1)",
       {{"mu", 1.0}, {"kappa", 1.0}}, "idealized energy mu*h(t) + kappa/2*h(z) with h = K - 1"},
  };
  return entries;
}

inline const CatalogEntry& catalog_entry(CatalogId id) {
  for (const auto& entry : catalog_entries()) {
    if (entry.id == id) return entry;
  }
  throw UnknownCatalogId("unknown catalog id");
}

inline CatalogId parse_catalog_id(std::string_view key) {
  for (const auto& entry : catalog_entries()) {
    if (key == entry.key) return entry.id;
  }
  std::string known;
  for (const auto& entry : catalog_entries()) known += std::string(known.empty() ? "" : ", ") + entry.key;
  throw UnknownCatalogId("unknown catalog id '" + std::string(key) + "' (known: " + known + ")");
}

inline const char* to_string(CatalogId id) { return catalog_entry(id).key; }

inline std::vector<CatalogId> all_catalog_ids() {
  std::vector<CatalogId> ids;
  for (const auto& entry : catalog_entries()) ids.push_back(entry.id);
  return ids;
}

/// Replaces every `{name}` in `source` by the parenthesized value of `name`.
inline std::string substitute_params(std::string_view source, const Params& params) {
  std::string out;
  std::size_t i = 0;
  while (i < source.size()) {
    if (source[i] != '{') {
      out += source[i++];
      continue;
    }
    const std::size_t close = source.find('}', i);
    if (close == std::string_view::npos) throw InputError("unterminated '{' in expression template");
    const std::string key(source.substr(i + 1, close - i - 1));
    const auto it = params.find(key);
    if (it == params.end()) throw InputError("no value for parameter '" + key + "'");
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), it->second);
    out += "(" + std::string(buf.data(), ptr) + ")";
    i = close + 1;
  }
  return out;
}

/// Built-in energy with its documented default parameters, optionally overridden.
inline SplitEnergy catalog(CatalogId id, const Params& overrides = {}) {
  const CatalogEntry& entry = catalog_entry(id);
  Params params(entry.defaults.begin(), entry.defaults.end());
  for (const auto& [key, value] : overrides) {
    if (!params.count(key)) {
      throw InputError(std::string("catalog entry '") + entry.key + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw InputError("parameter '" + key + "' must be finite");
    params[key] = value;
  }
  for (const char* positive : {"k", "k_hat"}) {
    const auto it = params.find(positive);
    if (it != params.end() && !(it->second > 0.0)) {
      throw InputError(std::string("parameter '") + positive + "' must be positive");
    }
  }
  SplitEnergy e = make_split(substitute_params(entry.h, params), substitute_params(entry.f, params), entry.key);
  e.catalog_id = id;
  e.params = params;
  return e;
}

inline SplitEnergy catalog(std::string_view key, const Params& overrides = {}) {
  return catalog(parse_catalog_id(key), overrides);
}

}  // namespace rankone
