#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "rankone/criteria.hpp"
#include "rankone/energy.hpp"
#include "rankone/energy_file.hpp"
#include "rankone/oracle.hpp"
#include "rankone/report.hpp"
#include "rankone/scan.hpp"
#include "rankone/stress.hpp"

namespace rankone {

enum class Subcommand { Check, Classify, Oracle, Stress, Scan };
enum class ReportFormat { Json, Text };

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kNotRankOneConvex = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kInputError = 3;
}  // namespace exit_code

struct RunConfig {
  Subcommand subcommand = Subcommand::Check;
  std::optional<std::string> catalog;
  std::optional<std::string> energy_file;
  Params params;  // catalog parameter overrides
  CheckOptions check;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;  // oracle refinements
  std::size_t grid = 256;              // scan resolution per axis
  bool linear_preset = false;
  std::size_t directions = 48;
  std::optional<std::string> out_csv;
  std::optional<std::string> out_svg;
  ReportFormat report = ReportFormat::Json;
  std::optional<SingularPair> at;

  void validate() const {
    if (catalog.has_value() == energy_file.has_value()) {
      throw InputError("give exactly one of --catalog or --energy-file");
    }
    if (!(check.tol > 0.0)) throw InputError("--tol must be positive");
    check.t_grid.validate();
    check.z_grid.validate();
    if (grid < 2) throw InputError("--grid must be at least 2");
    if (at && (!(at->lambda1 > 0.0) || !(at->lambda2 > 0.0))) throw InputError("--at needs positive values");
  }
};

inline int exit_for(Overall o) {
  switch (o) {
    case Overall::RankOneConvex: return exit_code::kSuccess;
    case Overall::NotRankOneConvex: return exit_code::kNotRankOneConvex;
    case Overall::Inconclusive: return exit_code::kInconclusive;
  }
  return exit_code::kInconclusive;
}

namespace detail {

inline SplitEnergy load_energy(const RunConfig& cfg) {
  if (cfg.catalog) return catalog(*cfg.catalog, cfg.params);
  if (!cfg.params.empty()) throw InputError("--mu/--kappa/--k/--k-hat apply to catalog energies only");
  return load_energy_file(*cfg.energy_file);
}

inline void emit(std::ostream& out, const RunConfig& cfg, const Json& doc, const std::string& text) {
  if (cfg.report == ReportFormat::Json) {
    out << doc.dump(2) << "\n";
  } else {
    out << text;
  }
}

inline int run_check(const RunConfig& cfg, const SplitEnergy& e, std::ostream& out) {
  const RankOneVerdict main = main_check(e, cfg.check);
  const NecessaryResult nec = necessary_battery(e, cfg.check.t_grid, cfg.check.tol);
  const RankOneVerdict cross = voliso_check(e, cfg.check.t_grid, cfg.check.z_grid, cfg.check.tol);
  RankOneVerdict all = main;
  all.reports.insert(all.reports.end(), nec.reports.begin(), nec.reports.end());
  all.reports.insert(all.reports.end(), cross.reports.begin(), cross.reports.end());
  all.overall = combine(all.reports);

  Json doc = verdict_json(e, all);
  doc["convexity"] = {{"h", to_json(nec.h_convexity)}, {"f", to_json(nec.f_convexity)}};
  doc["routes"] = {{"MainTheorem", to_string(main.overall)}, {"Voliso", to_string(cross.overall)}};
  std::ostringstream text;
  print_text(text, e, all);
  text << "h convexity: " << to_string(nec.h_convexity.kind) << ", f convexity: " << to_string(nec.f_convexity.kind)
       << "\n";
  emit(out, cfg, doc, text.str());
  return exit_for(all.overall);
}

inline int run_classify(const RunConfig& cfg, const SplitEnergy& e, std::ostream& out) {
  const Classification c = classify_structure(e, cfg.check);
  Json doc = verdict_json(e, c.verdict);
  doc["structure"] = to_string(c.structure);
  if (c.structure == Structure::HadamardK) doc["mu"] = c.mu;
  if (c.structure == Structure::IdealizedSameH) doc["ratio"] = c.ratio;
  std::ostringstream text;
  text << "structure: " << to_string(c.structure) << "\n";
  print_text(text, e, c.verdict);
  emit(out, cfg, doc, text.str());
  return exit_for(c.verdict.overall);
}

inline int run_oracle(const RunConfig& cfg, const SplitEnergy& e, std::ostream& out) {
  BruteForceOptions opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.check.tol;
  if (cfg.samples) opt.refinements = *cfg.samples;
  const BruteForceResult r = brute_force_check(e, opt);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["energy"] = to_json(e);
  doc["route"] = "Oracle";
  doc["result"] = r.violation ? "Violation" : "NoViolationFound";
  doc["min_value"] = json_number(r.value);
  doc["F"] = {r.F.a, r.F.b, r.F.c, r.F.d};
  doc["xi"] = {r.xi.x, r.xi.y};
  doc["eta"] = {r.eta.x, r.eta.y};
  doc["samples"] = r.samples;
  doc["seed"] = cfg.seed;
  doc["overall"] = r.violation ? "NotRankOneConvex" : "NoViolationFound";
  std::ostringstream text;
  text << "energy: " << e.name << "\n"
       << "result: " << (r.violation ? "Violation" : "NoViolationFound") << "\n"
       << "min D2W(F).(xi x eta)^2 = " << detail::format_g9(r.value) << "\n"
       << "F = [[" << detail::format_g9(r.F.a) << ", " << detail::format_g9(r.F.b) << "], ["
       << detail::format_g9(r.F.c) << ", " << detail::format_g9(r.F.d) << "]]\n"
       << "xi = (" << detail::format_g9(r.xi.x) << ", " << detail::format_g9(r.xi.y) << "), eta = ("
       << detail::format_g9(r.eta.x) << ", " << detail::format_g9(r.eta.y) << ")\n"
       << "samples: " << r.samples << "\n";
  emit(out, cfg, doc, text.str());
  return r.violation ? exit_code::kNotRankOneConvex : exit_code::kSuccess;
}

inline int run_stress(const RunConfig& cfg, const SplitEnergy& e, std::ostream& out) {
  const SingularPair p = cfg.at.value_or(SingularPair{1.0, 1.0});
  const StressState s = principal_cauchy(e, p);
  const InfinitesimalModuli m = infinitesimal_moduli(e);
  const InvertibilityResult inv = invertibility_verdict(e, cfg.check.t_grid, cfg.check.z_grid, cfg.check.tol);
  const LinearRankOne lin = linear_rank_one_check(m.mu, m.kappa);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["energy"] = to_json(e);
  doc["at"] = {p.lambda1, p.lambda2};
  doc["sigma1"] = s.sigma1;
  doc["sigma2"] = s.sigma2;
  doc["tau_iso"] = s.tau_iso;
  doc["tau_vol"] = s.tau_vol;
  doc["det_D_sigma"] = s.det_D_sigma;
  doc["moduli"] = {{"mu", m.mu}, {"kappa", m.kappa}, {"lame_lambda", m.lame_lambda}, {"stress_free", m.stress_free}};
  Json inv_json = {{"verdict", to_string(inv.verdict)}, {"reason", inv.reason}};
  if (inv.verdict == Invertibility::Degenerate) {
    inv_json["witness"] = {{inv.variable, inv.witness}};
    inv_json["value"] = inv.witness_value;
  }
  doc["verdicts"] = {{"invertibility", inv_json}, {"linear_rank_one", to_string(lin)}};
  std::ostringstream text;
  text << "energy: " << e.name << "\n"
       << "at (lambda1, lambda2) = (" << detail::format_g9(p.lambda1) << ", " << detail::format_g9(p.lambda2) << ")\n"
       << "sigma1 = " << detail::format_g9(s.sigma1) << ", sigma2 = " << detail::format_g9(s.sigma2) << "\n"
       << "tau_iso = " << detail::format_g9(s.tau_iso) << ", tau_vol = " << detail::format_g9(s.tau_vol) << "\n"
       << "det D sigma = " << detail::format_g9(s.det_D_sigma) << "\n"
       << "mu = " << detail::format_g9(m.mu) << ", kappa = " << detail::format_g9(m.kappa)
       << ", lame_lambda = " << detail::format_g9(m.lame_lambda) << "\n"
       << "invertibility: " << to_string(inv.verdict) << " (" << inv.reason << ")";
  if (inv.verdict == Invertibility::Degenerate) {
    text << " at " << inv.variable << " = " << detail::format_g9(inv.witness);
  }
  text << "\nlinear rank-one: " << to_string(lin) << "\n";
  emit(out, cfg, doc, text.str());
  return exit_code::kSuccess;
}

inline int run_scan(const RunConfig& cfg, const SplitEnergy& e, std::ostream& out) {
  ScanOptions opt = cfg.linear_preset ? ScanOptions::linear_preset() : ScanOptions{};
  opt.grid.n = cfg.grid;
  opt.directions = cfg.directions;
  opt.tol = cfg.check.tol;
  const EllipticityMap m = scan_domain(e, opt);
  if (cfg.out_csv) emit_csv(m, *cfg.out_csv);
  if (cfg.out_svg) emit_svg(m, *cfg.out_svg);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["energy"] = to_json(e);
  doc["grid"] = {{"lo", m.grid.lo},
                 {"hi", m.grid.hi},
                 {"n", m.grid.n},
                 {"spacing", m.grid.spacing == Spacing::Log ? "log" : "linear"}};
  doc["cells"] = {{"Elliptic", m.count(CellVerdict::Elliptic)},
                  {"NonElliptic", m.count(CellVerdict::NonElliptic)},
                  {"Boundary", m.count(CellVerdict::Boundary)},
                  {"Undefined", m.count(CellVerdict::Undefined)}};
  std::ostringstream text;
  text << "energy: " << e.name << "\n"
       << "grid: " << m.size() << " x " << m.size() << "\n"
       << "Elliptic: " << m.count(CellVerdict::Elliptic) << ", NonElliptic: " << m.count(CellVerdict::NonElliptic)
       << ", Boundary: " << m.count(CellVerdict::Boundary) << ", Undefined: " << m.count(CellVerdict::Undefined)
       << "\n";
  emit(out, cfg, doc, text.str());
  return exit_code::kSuccess;
}

}  // namespace detail

/// Runs one subcommand. Library errors become exit code 3 with a message on `err`.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    cfg.validate();
    const SplitEnergy e = detail::load_energy(cfg);
    switch (cfg.subcommand) {
      case Subcommand::Check: return detail::run_check(cfg, e, out);
      case Subcommand::Classify: return detail::run_classify(cfg, e, out);
      case Subcommand::Oracle: return detail::run_oracle(cfg, e, out);
      case Subcommand::Stress: return detail::run_stress(cfg, e, out);
      case Subcommand::Scan: return detail::run_scan(cfg, e, out);
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_code::kInputError;
  }
  return exit_code::kInputError;
}

}  // namespace rankone
