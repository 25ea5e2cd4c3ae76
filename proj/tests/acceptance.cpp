// Acceptance runner: one [PASS]/[FAIL] line per criterion, with the measured
// quantities behind each verdict. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rankone/criteria.hpp"
#include "rankone/oracle.hpp"
#include "rankone/scan.hpp"
#include "rankone/stress.hpp"

using namespace rankone;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream notes;

  // records a named sub-check; failed ones are listed in the summary line
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes << " FAILED{" << what << "}";
    }
  }
};

std::string g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

const ConditionReport* find(const std::vector<ConditionReport>& rs, ConditionId id) {
  for (const auto& r : rs)
    if (r.id == id) return &r;
  return nullptr;
}

struct Sample {
  Mat2 F;
  RankOneDirection dir;
};

std::vector<Sample> random_samples(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logl(std::log(lo), std::log(hi));
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::vector<Sample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 F = Mat2::rotation(ang(rng)) * Mat2::diag(std::exp(logl(rng)), std::exp(logl(rng))) *
                   Mat2::rotation(ang(rng));
    out.push_back({F, RankOneDirection::from_angles(ang(rng), ang(rng))});
  }
  return out;
}

Outcome ac1() {
  Outcome o;
  const SplitEnergy e = catalog(CatalogId::Example1);
  const RankOneVerdict v = main_check(e);
  const double f0 = v.f0->value, zf = v.f0->attained_at, h0 = v.h0->value;
  o.notes << "f0=" << g(f0) << " at z=" << g(zf) << ", h0=" << g(h0) << ", verdict=" << to_string(v.overall);
  o.expect(std::abs(f0 - std::sqrt(3.0) / 15.0) < 1e-8, "f0 = sqrt(3)/15");
  o.expect(std::abs(zf - std::pow(3.0, 0.25)) < 1e-6, "f0 attained at 3^(1/4)");
  o.expect(std::abs(h0 + 0.101677) <= 1e-4, "h0 = -0.101677");
  o.expect(v.overall == Overall::RankOneConvex, "RankOneConvex");
  const BruteForceResult bf = brute_force_check(e);
  o.notes << ", oracle=" << (bf.violation ? "Violation" : "NoViolationFound") << " over " << bf.samples;
  o.expect(!bf.violation, "oracle NoViolationFound");
  return o;
}

Outcome ac2() {
  Outcome o;
  const SplitEnergy e = catalog(CatalogId::Example2);
  const RankOneVerdict v = main_check(e);
  const double f0 = v.f0->value, zf = v.f0->attained_at, h0 = v.h0->value;
  const InfinitesimalModuli m = infinitesimal_moduli(e);
  o.notes << "f0=" << g(f0) << " at z=" << g(zf) << ", z^2 f''(1)=" << g(e.f_jet(1.0).d2) << ", h0=" << g(h0)
          << ", mu=" << g(m.mu) << ", kappa=" << g(m.kappa) << ", verdict=" << to_string(v.overall);
  // the stated infimum is the value at z = 1, but z^2 f'' dips lower just left of 1;
  // the brute-force minimizer below confirms the computed value independently
  double scan_min = std::numeric_limits<double>::infinity(), scan_at = 0.0;
  for (double z : Grid::log(0.5, 2.0, 300001).points()) {
    const double phi = z * z * e.f_jet(z).d2;
    if (phi < scan_min) scan_min = phi, scan_at = z;
  }
  o.notes << ", dense scan min=" << g(scan_min) << " at z=" << g(scan_at);
  o.expect(std::abs(f0 + 8.0) < 1e-8 && std::abs(zf - 1.0) < 1e-6,
           "f0 = -8 at z = 1: the infimum of z^2 f'' is " + g(scan_min) + " at z = " + g(scan_at) +
               ", below the value -8 at z = 1");
  o.expect(std::abs(h0 - 24.0 * std::sqrt(3.0) / 5.0) < 1e-6, "h0 = 24 sqrt(3)/5");
  o.expect(v.overall == Overall::RankOneConvex, "RankOneConvex");
  o.expect(std::abs(m.mu - 48.0 / 5.0) < 1e-9, "mu = 48/5");
  o.expect(std::abs(m.kappa + 8.0) < 1e-9, "kappa = -8");
  return o;
}

Outcome ac3() {
  Outcome o;
  const std::vector<std::string> convex_f = {
      "0",          "(z - 1)^2",         "z + 1/z",       "(z - 1/z)^2", "z^3",
      "-log(z)",    "z^4 + 1/z",         "z*log(z)",      "(z - 2)^4",   "(1/2)*(z + 1/z) - 1"};
  std::size_t ok = 0;
  for (const auto& f : convex_f) {
    const Classification c = classify_structure(make_split("3*(1/2)*(t + 1/t)", f));
    const bool good = c.structure == Structure::HadamardK && c.verdict.overall == Overall::RankOneConvex;
    ok += good;
    o.expect(good, "mu K + " + f);
  }
  o.notes << ok << "/" << convex_f.size() << " convex f RankOneConvex";

  const SplitEnergy bad = make_split("3*(1/2)*(t + 1/t)", "-(z - 1)^2");
  const Classification c = classify_structure(bad);
  const ConditionReport* m1 = find(c.verdict.reports, ConditionId::Main1);
  o.expect(c.verdict.overall == Overall::NotRankOneConvex, "-(z-1)^2 NotRankOneConvex");
  o.expect(m1 && m1->verdict == Verdict::Fails && !m1->witness.empty(), "condition 1 witness");
  if (m1 && !m1->witness.empty()) {
    o.notes << "; -(z-1)^2: condition 1 margin " << g(m1->worst_margin) << " at";
    for (const auto& [k, x] : m1->witness) o.notes << " " << k << "=" << g(x);
  }
  const BruteForceResult bf = brute_force_check(bad);
  const double fd = fd_second_derivative(bad, bf.F, {bf.xi, bf.eta});
  o.notes << "; oracle F=[" << g(bf.F.a) << "," << g(bf.F.b) << ";" << g(bf.F.c) << "," << g(bf.F.d) << "] xi=("
          << g(bf.xi.x) << "," << g(bf.xi.y) << ") eta=(" << g(bf.eta.x) << "," << g(bf.eta.y) << ") D2W=" << g(bf.value)
          << " (FD " << g(fd) << ")";
  o.expect(bf.violation && fd < 0.0, "oracle violation confirmed by finite differences");
  return o;
}

Outcome ac4() {
  Outcome o;
  const SplitEnergy e = catalog(CatalogId::ExpHenckyIso);
  CheckOptions opt;
  const RankOneVerdict ks = ks_check(as_general(e), opt.ks_grid, opt.tol);
  const RankOneVerdict main = main_check(e, opt);
  o.notes << "ks=" << to_string(ks.overall) << ", main=" << to_string(main.overall);
  o.expect(ks.overall == Overall::NotRankOneConvex, "ks fails");
  o.expect(main.overall == Overall::NotRankOneConvex, "main fails");

  const EllipticityMap m = scan_domain(e);
  std::size_t same = 0, total = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const CellVerdict base = m.at(i, j).verdict;
      bool all = true;
      for (double s : {0.5, 2.0})
        all = all && cell_verdict(e, s * m.axis[i], s * m.axis[j], 48, 1e-8).verdict == base;
      same += all;
      ++total;
    }
  o.notes << ", ray-invariant cells " << same << "/" << total << " (NonElliptic " << m.count(CellVerdict::NonElliptic)
          << ")";
  o.expect(same == total, "ray invariance 100%");
  o.expect(m.count(CellVerdict::NonElliptic) > 0, "non-empty non-elliptic set");
  return o;
}

Outcome ac5() {
  Outcome o;
  std::vector<SplitEnergy> energies;
  for (CatalogId id : all_catalog_ids()) energies.push_back(catalog(id));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(std::log(0.2), std::log(5.0));
  for (int i = 0; i < 20; ++i)
    energies.push_back(catalog(CatalogId::Idealized, {{"mu", std::exp(u(rng))}, {"kappa", std::exp(u(rng))}}));
  CheckOptions opt;
  std::size_t agree = 0;
  for (const SplitEnergy& e : energies) {
    const Overall a = ks_check(as_general(e), opt.ks_grid, opt.tol).overall;
    const Overall b = voliso_check(e, opt.t_grid, opt.z_grid, opt.tol).overall;
    const Overall c = main_check(e, opt).overall;
    const bool same = a == b && b == c;
    agree += same;
    o.expect(same, e.name + ": ks " + to_string(a) + ", voliso " + to_string(b) + ", main " + to_string(c));
  }
  o.notes << agree << "/" << energies.size() << " energies agree across ks, voliso, main";
  return o;
}

Outcome ac6() {
  Outcome o;
  double worst_fd = 0.0, worst_contract = 0.0;
  for (CatalogId id : all_catalog_ids()) {
    const SplitEnergy e = catalog(id);
    double energy_fd = 0.0, energy_contract = 0.0;
    for (const Sample& s : random_samples(1000, 0.25, 4.0, 21 + static_cast<unsigned>(id))) {
      const double an = analytic_second_derivative(e, s.F, s.dir);
      const double fd = fd_second_derivative(e, s.F, s.dir);
      energy_fd = std::max(energy_fd, std::abs(an - fd) / (1.0 + std::abs(an)));
      const double q = acoustic_tensor(e, s.F, s.dir.eta).contract(s.dir.xi);
      energy_contract = std::max(energy_contract, std::abs(q - an) / std::max(1.0, std::abs(an)));
    }
    o.expect(energy_fd < 1e-6, std::string(to_string(id)) + " analytic vs FD " + g(energy_fd));
    o.expect(energy_contract < 1e-4, std::string(to_string(id)) + " contraction " + g(energy_contract));
    worst_fd = std::max(worst_fd, energy_fd);
    worst_contract = std::max(worst_contract, energy_contract);
  }
  o.notes << "worst relative analytic-FD gap " << g(worst_fd) << ", worst contraction gap " << g(worst_contract)
          << " over 1000 samples x " << all_catalog_ids().size() << " energies";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t match = 0;
  for (int i = -20; i <= 20; ++i)
    for (int j = -20; j <= 20; ++j) {
      const double mu = i / 10.0, kappa = j / 10.0;
      const bool expected = i >= 0 && i + j >= 0;
      const bool got = linear_rank_one_check(mu, kappa) != LinearRankOne::Not;
      match += expected == got;
      if (expected != got) o.expect(false, "mu=" + g(mu) + " kappa=" + g(kappa));
    }
  o.notes << match << "/1681 grid points match {mu >= 0, mu + kappa >= 0}";
  return o;
}

Outcome ac8() {
  Outcome o;
  const double eps = std::numeric_limits<double>::epsilon();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(std::log(0.2), std::log(5.0));
  double worst = 0.0;
  for (CatalogId id : all_catalog_ids()) {
    const SplitEnergy e = catalog(id);
    for (int n = 0; n < 1000; ++n) {
      const SingularPair p{std::exp(u(rng)), std::exp(u(rng))};
      double J[2][2];
      for (int j = 0; j < 2; ++j) {
        const double step = (j == 0 ? p.lambda1 : p.lambda2) * std::cbrt(eps);
        auto S = [&](double s) {
          SingularPair q = p;
          (j == 0 ? q.lambda1 : q.lambda2) += s;
          return principal_cauchy(e, q);
        };
        const StressState p2 = S(2 * step), p1 = S(step), m1 = S(-step), m2 = S(-2 * step);
        J[0][j] = (-p2.sigma1 + 8 * p1.sigma1 - 8 * m1.sigma1 + m2.sigma1) / (12 * step);
        J[1][j] = (-p2.sigma2 + 8 * p1.sigma2 - 8 * m1.sigma2 + m2.sigma2) / (12 * step);
      }
      const double fd = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      const double scale = std::abs(J[0][0] * J[1][1]) + std::abs(J[0][1] * J[1][0]);
      worst = std::max(worst, std::abs(stress_jacobian_det(e, p) - fd) / std::max(1.0, scale));
    }
  }
  o.notes << "worst Jacobian gap " << g(worst) << " over " << 1000 * all_catalog_ids().size() << " states";
  o.expect(worst < 1e-6, "Jacobian closed form vs FD");

  const CheckOptions opt;
  for (const auto& [h, f] : std::vector<std::pair<std::string, std::string>>{
           {"(1/2)*(t + 1/t)", "(z - 1)^2"}, {"(t - 1/t)^2", "z^2"}, {"(3/2)*(t + 1/t)", "(z - 2)^2 + z^2"}}) {
    const InvertibilityResult r = invertibility_verdict(make_split(h, f), opt.t_grid, opt.z_grid, opt.tol);
    o.expect(r.verdict == Invertibility::LocallyInvertible, "h=" + h + ", f=" + f + " " + to_string(r.verdict));
  }
  const InvertibilityResult dw = invertibility_verdict(catalog(CatalogId::Example2), opt.t_grid, opt.z_grid, opt.tol);
  o.notes << "; example2 " << to_string(dw.verdict) << " at " << dw.variable << "=" << g(dw.witness);
  o.expect(dw.verdict == Invertibility::Degenerate && dw.variable == "z" && std::abs(dw.witness - 1.0) < 1e-12,
           "example2 Degenerate at z = 1");
  return o;
}

Outcome ac9() {
  Outcome o;
  const CheckOptions opt;
  const NecessaryResult n1 = necessary_battery(catalog(CatalogId::Example1), opt.t_grid, opt.tol);
  const NecessaryResult n2 = necessary_battery(catalog(CatalogId::Example2), opt.t_grid, opt.tol);
  o.notes << "example1: h " << to_string(n1.h_convexity.kind) << ", f " << to_string(n1.f_convexity.kind)
          << "; example2: h " << to_string(n2.h_convexity.kind) << ", f " << to_string(n2.f_convexity.kind);
  o.expect(n1.h_convexity.kind == Convexity::NonConvex && n1.f_convexity.kind == Convexity::Convex,
           "example1 h non-convex, f convex");
  const ConditionReport* a1 = find(n1.reports, ConditionId::Nec_a);
  o.expect(a1 && a1->verdict == Verdict::Holds && a1->detail == "f convex", "example1 condition a via f");
  o.expect(n2.h_convexity.kind == Convexity::Convex && n2.f_convexity.kind == Convexity::NonConvex,
           "example2 h convex, f non-convex");
  for (const auto* n : {&n1, &n2}) {
    const ConditionReport* d = find(n->reports, ConditionId::Nec_d);
    o.expect(d && d->verdict == Verdict::Holds && d->worst_margin > 0.0, "t h'' + h' > 0");
    if (d) o.notes << "; min t h''+h' " << g(d->worst_margin);
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(std::log(0.05), std::log(20.0));
  const CheckOptions opt;
  std::size_t good = 0, bad = 0;
  const int n = 12;
  for (int i = 0; i < n; ++i) {
    const double mu = std::exp(u(rng)), kappa = std::exp(u(rng));
    const std::string m = g(mu), k = g(kappa);
    const SplitEnergy convex = make_split(m + "*((1/2)*(t + 1/t) - 1)", "(" + k + "/2)*((1/2)*(z + 1/z) - 1)");
    const SplitEnergy nonconvex =
        make_split(m + "*(exp((1/10)*log(t)^2) - 1)", "(" + k + "/2)*(exp((1/10)*log(z)^2) - 1)");
    const bool c_ok = main_check(convex, opt).overall == Overall::RankOneConvex &&
                      classify_structure(convex, opt).verdict.overall == Overall::RankOneConvex;
    const bool n_ok = main_check(nonconvex, opt).overall == Overall::NotRankOneConvex &&
                      classify_structure(nonconvex, opt).verdict.overall == Overall::NotRankOneConvex;
    good += c_ok;
    bad += n_ok;
    o.expect(c_ok, "convex h, mu=" + m + " kappa=" + k);
    o.expect(n_ok, "non-convex h, mu=" + m + " kappa=" + k);
  }
  o.notes << "h = K - 1: " << good << "/" << n << " RankOneConvex; h = exp(log(t)^2/10) - 1: " << bad << "/" << n
          << " NotRankOneConvex";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 example 1 infima and verdict", ac1},
      {"AC2 example 2 infima, verdict, moduli", ac2},
      {"AC3 K-energy classification", ac3},
      {"AC4 isochoric exp-Hencky cones", ac4},
      {"AC5 route equivalence", ac5},
      {"AC6 analytic vs finite differences", ac6},
      {"AC7 linear elasticity region", ac7},
      {"AC8 stress Jacobian and invertibility", ac8},
      {"AC9 necessary battery", ac9},
      {"AC10 idealized family", ac10},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.notes << "exception: " << ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.notes.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
