#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "rankone/energy.hpp"
#include "rankone/expr.hpp"
#include "rankone/grid.hpp"

using namespace rankone;

namespace {

void expect_jet(const Jet2& j, double v, double d1, double d2, double tol = 1e-14) {
  EXPECT_NEAR(j.value, v, tol * (1.0 + std::abs(v)));
  EXPECT_NEAR(j.d1, d1, tol * (1.0 + std::abs(d1)));
  EXPECT_NEAR(j.d2, d2, tol * (1.0 + std::abs(d2)));
}

}  // namespace

TEST(Expr, IdentityJet) {
  const Jet2 j = eval_jet2(Expr::parse("t", "t"), 3.0);
  EXPECT_EQ(j, (Jet2{3.0, 1.0, 0.0}));
}

TEST(Expr, SquareJet) {
  const Jet2 j = eval_jet2(Expr::parse("t^2", "t"), 3.0);
  EXPECT_EQ(j, (Jet2{9.0, 6.0, 2.0}));
}

TEST(Expr, DistortionJetAtTwo) {
  // h = (t + 1/t)/2, h' = (1 - 1/t^2)/2, h'' = 1/t^3
  const double t = 2.0;
  expect_jet(eval_jet2(Expr::parse("(1/2)*(t + 1/t)", "t"), t), 1.25, 0.375, 1.0 / (t * t * t));
}

TEST(Expr, ExponentiatedLogSquareAtOne) {
  // h = exp(L^2/10): h'' = exp(L^2/10) (2c - 2cL + 4c^2 L^2)/t^2 with c = 1/10, L = 0
  expect_jet(eval_jet2(Expr::parse("exp((1/10)*log(t)^2)", "t"), 1.0), 1.0, 0.0, 0.2);
}

TEST(Expr, VolumetricExampleParses) {
  const Expr f = Expr::parse("(1/60)*(z - 1/z)^2", "z");
  // f' = (1/30)(z - 1/z)(1 + 1/z^2), f'' = (1/30)(1 + 3/z^4)
  const double z = 1.7;
  const double u = z - 1.0 / z;
  expect_jet(eval_jet2(f, z), u * u / 60.0, u * (1.0 + 1.0 / (z * z)) / 30.0, (1.0 + 3.0 / std::pow(z, 4)) / 30.0,
             1e-13);
}

TEST(Expr, PrecedenceAndAssociativity) {
  auto value = [](const char* s) { return Expr::parse(s, "t").eval(3.0); };
  EXPECT_DOUBLE_EQ(value("-t^2"), -9.0);
  EXPECT_DOUBLE_EQ(value("t^-2"), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(value("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(value("2*t+4"), 10.0);
  EXPECT_DOUBLE_EQ(value("2*(t+4)"), 14.0);
  EXPECT_DOUBLE_EQ(value("t/3/2"), 0.5);
  EXPECT_DOUBLE_EQ(value("t-1-1"), 1.0);
  EXPECT_DOUBLE_EQ(value("--t"), 3.0);
  EXPECT_DOUBLE_EQ(value("+t"), 3.0);
  EXPECT_DOUBLE_EQ(value("1.5e-3*t"), 4.5e-3);
  EXPECT_DOUBLE_EQ(value("2E1"), 20.0);
  EXPECT_DOUBLE_EQ(value(".5"), 0.5);
  EXPECT_DOUBLE_EQ(value("pi"), std::acos(-1.0));
  EXPECT_DOUBLE_EQ(value("e"), std::exp(1.0));
  EXPECT_DOUBLE_EQ(value("e^t"), std::exp(3.0));
}

TEST(Expr, FunctionsMatchLibm) {
  const double x = 2.5;
  auto value = [&](const char* s) { return Expr::parse(s, "t").eval(x); };
  EXPECT_DOUBLE_EQ(value("exp(t)"), std::exp(x));
  EXPECT_DOUBLE_EQ(value("log(t)"), std::log(x));
  EXPECT_DOUBLE_EQ(value("sqrt(t)"), std::sqrt(x));
  EXPECT_DOUBLE_EQ(value("cosh(t)"), std::cosh(x));
  EXPECT_DOUBLE_EQ(value("sinh(t)"), std::sinh(x));
  EXPECT_DOUBLE_EQ(value("tanh(t)"), std::tanh(x));
  EXPECT_DOUBLE_EQ(value("arcosh(t)"), std::acosh(x));
  EXPECT_DOUBLE_EQ(value("t^t"), std::pow(x, x));
}

TEST(Expr, VariableExponentDerivative) {
  // (t^t)' = t^t (log t + 1), (t^t)'' = t^t ((log t + 1)^2 + 1/t)
  const double x = 1.3;
  const double v = std::pow(x, x);
  const double l = std::log(x) + 1.0;
  expect_jet(eval_jet2(Expr::parse("t^t", "t"), x), v, v * l, v * (l * l + 1.0 / x), 1e-14);
}

TEST(Expr, PolynomialsAreExact) {
  // small integer coefficients and arguments keep every operation exact
  const std::vector<std::vector<int>> polys = {{1, -2, 3, -4, 5}, {0, 0, 0, 0, 1}, {7, 0, -1, 2, 0}, {-3, 5, 0, 0, 0}};
  for (const auto& c : polys) {
    std::string src = std::to_string(c[0]);
    for (int k = 1; k <= 4; ++k) src += " + (" + std::to_string(c[k]) + ")*t^" + std::to_string(k);
    const Expr p = Expr::parse(src, "t");
    for (int x = 1; x <= 6; ++x) {
      double v = 0, d1 = 0, d2 = 0;
      for (int k = 0; k <= 4; ++k) {
        v += c[k] * std::pow(x, k);
        if (k >= 1) d1 += k * c[k] * std::pow(x, k - 1);
        if (k >= 2) d2 += k * (k - 1) * c[k] * std::pow(x, k - 2);
      }
      EXPECT_EQ(p.eval_jet2(x), (Jet2{v, d1, d2})) << src << " at " << x;
    }
  }
  const Expr product = Expr::parse("(t - 1)*(t + 2)*t*(2*t - 3)", "t");
  // expanded: 2t^4 - t^3 - 7t^2 + 6t
  for (int x = 1; x <= 6; ++x) {
    const double v = 2.0 * x * x * x * x - x * x * x - 7.0 * x * x + 6.0 * x;
    const double d1 = 8.0 * x * x * x - 3.0 * x * x - 14.0 * x + 6.0;
    const double d2 = 24.0 * x * x - 6.0 * x - 14.0;
    EXPECT_EQ(product.eval_jet2(x), (Jet2{v, d1, d2}));
  }
}

TEST(Expr, CatalogDerivativesMatchFiniteDifferences) {
  const double eps = std::numeric_limits<double>::epsilon();
  const std::vector<double> xs = Grid::log(1e-3, 1e3, 100).points();
  for (CatalogId id : all_catalog_ids()) {
    const SplitEnergy e = catalog(id);
    for (const Expr* ex : {&e.h, &e.f}) {
      for (double x : xs) {
        const Jet2 j = ex->eval_jet2(x);
        const double h1 = x * std::cbrt(eps);
        const double h2 = x * std::pow(eps, 0.25);
        auto v = [&](double dx) { return ex->eval(x + dx); };
        const double fd1 = (-v(2 * h1) + 8 * v(h1) - 8 * v(-h1) + v(-2 * h1)) / (12.0 * h1);
        const double fd2 =
            (-v(2 * h2) + 16 * v(h2) - 30 * j.value + 16 * v(-h2) - v(-2 * h2)) / (12.0 * h2 * h2);
        const double s1 = std::abs(j.d1) + std::abs(j.value) / x;
        const double s2 = std::abs(j.d2) + std::abs(j.value) / (x * x);
        EXPECT_LE(std::abs(fd1 - j.d1), 1e-6 * s1) << ex->source() << " at " << x;
        EXPECT_LE(std::abs(fd2 - j.d2), 1e-6 * s2) << ex->source() << " at " << x;
      }
    }
  }
}

TEST(Expr, PrintParseRoundTrip) {
  const std::vector<std::string> sources = {
      "exp((1/10)*log(t)^2)",
      "(6/5)*(t - 1/t)^2",
      "-t^2 + 3.25e-7*t - pi",
      "2^3^t",
      "sqrt(cosh(t)) / sinh(t) * tanh(-t) + arcosh(t + 1)",
      "0.1 + 0.2",
      "t^-2 - --t",
      "e^t + 1e300",
  };
  for (const auto& s : sources) {
    const Expr a = Expr::parse(s, "t");
    const std::string printed = a.to_string();
    const Expr b = Expr::parse(printed, "t");
    EXPECT_EQ(a, b) << s << " -> " << printed;
    EXPECT_EQ(b.to_string(), printed);
    EXPECT_EQ(a.eval(1.7), b.eval(1.7));
  }
}

TEST(Expr, StructuralEquality) {
  EXPECT_EQ(Expr::parse("t + 1", "t"), Expr::parse("(t)+(1)", "t"));
  EXPECT_FALSE(Expr::parse("t + 1", "t") == Expr::parse("1 + t", "t"));
  EXPECT_FALSE(Expr::parse("t", "t") == Expr::parse("z", "z"));
  EXPECT_EQ(Expr::parse("z^2", "z").with_variable("t"), Expr::parse("t^2", "t"));
}

TEST(Expr, SyntaxErrorsCarryOffsets) {
  auto offset_of = [](const char* s) -> std::size_t {
    try {
      Expr::parse(s, "t");
    } catch (const SyntaxError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  EXPECT_EQ(offset_of("t +"), 3u);
  EXPECT_EQ(offset_of("(t"), 2u);
  EXPECT_EQ(offset_of("t )"), 2u);
  EXPECT_EQ(offset_of("2 * * t"), 4u);
  EXPECT_EQ(offset_of(""), 0u);
  EXPECT_EQ(offset_of("exp t"), 4u);
  EXPECT_EQ(offset_of("t $ 2"), 2u);
}

TEST(Expr, UnknownIdentifierAndWrongVariable) {
  EXPECT_THROW(Expr::parse("foo(t)", "t"), UnknownIdentifier);
  EXPECT_THROW(Expr::parse("t + alpha", "t"), UnknownIdentifier);
  EXPECT_THROW(Expr::parse("z^2", "t"), WrongVariable);
  EXPECT_THROW(Expr::parse("t*z", "z"), WrongVariable);
  try {
    Expr::parse("1 + z", "t");
    FAIL();
  } catch (const WrongVariable& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(Expr::parse("t", "x"), InputError);
}

TEST(Expr, DomainErrors) {
  EXPECT_THROW(eval_jet2(Expr::parse("log(t - 2)", "t"), 1.0), DomainError);
  EXPECT_THROW(eval_jet2(Expr::parse("sqrt(1 - t)", "t"), 3.0), DomainError);
  EXPECT_THROW(eval_jet2(Expr::parse("arcosh(t)", "t"), 0.5), DomainError);
  EXPECT_THROW(eval_jet2(Expr::parse("exp(t)", "t"), 1000.0), DomainError);
  EXPECT_THROW(eval_jet2(Expr::parse("t", "t"), 0.0), DomainError);
  EXPECT_THROW(eval_jet2(Expr::parse("t", "t"), -1.0), DomainError);
  // jets propagate non-finite values without trapping
  EXPECT_TRUE(std::isnan(Expr::parse("log(t - 2)", "t").eval_jet2(1.0).value));
}

TEST(Expr, CopiesEvaluateIdentically) {
  const Expr e = Expr::parse("exp((1/10)*log(t)^2)", "t");
  const Expr copy = e;
  EXPECT_EQ(e.eval_jet2(2.0), copy.eval_jet2(2.0));
  EXPECT_EQ(e.source(), copy.source());
}
