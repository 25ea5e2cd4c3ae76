// rankone: rank-one convexity checks for planar split energies.
//
//   rankone check    --catalog example1
//   rankone classify --catalog k-energy --mu 3
//   rankone oracle   --energy-file my.energy --seed 7
//   rankone stress   --catalog example2 --at 1 1
//   rankone scan     --catalog exp-hencky-iso --out-csv map.csv --out-svg map.svg

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankone/cli.hpp"

namespace {

struct Flags {
  std::string catalog;
  std::string energy_file;
  std::optional<double> mu, kappa, k, k_hat;
  std::optional<double> t_min, t_max, z_min, z_max;
  std::optional<std::size_t> t_points, z_points;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::size_t grid = 256;
  std::string preset = "log";
  std::size_t directions = 48;
  std::string out_csv, out_svg;
  std::string report = "json";
  std::vector<double> at;
};

void add_common(CLI::App* sub, Flags& f) {
  auto* source = sub->add_option_group("energy source");
  source->add_option("--catalog", f.catalog, "built-in energy id");
  source->add_option("--energy-file", f.energy_file, "key=value energy definition file");
  source->require_option(1);
  sub->add_option("--mu", f.mu, "catalog shear parameter");
  sub->add_option("--kappa", f.kappa, "catalog bulk parameter");
  sub->add_option("--k", f.k, "catalog isochoric exponent");
  sub->add_option("--k-hat", f.k_hat, "catalog volumetric exponent");
  sub->add_option("--t-min", f.t_min, "t grid lower bound");
  sub->add_option("--t-max", f.t_max, "t grid upper bound");
  sub->add_option("--t-points", f.t_points, "t grid size");
  sub->add_option("--z-min", f.z_min, "z grid lower bound");
  sub->add_option("--z-max", f.z_max, "z grid upper bound");
  sub->add_option("--z-points", f.z_points, "z grid size");
  sub->add_option("--tol", f.tol, "absolute margin tolerance")->capture_default_str();
  sub->add_option("--report", f.report, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

rankone::RunConfig to_config(rankone::Subcommand cmd, const Flags& f) {
  rankone::RunConfig cfg;
  cfg.subcommand = cmd;
  if (!f.catalog.empty()) cfg.catalog = f.catalog;
  if (!f.energy_file.empty()) cfg.energy_file = f.energy_file;
  if (f.mu) cfg.params["mu"] = *f.mu;
  if (f.kappa) cfg.params["kappa"] = *f.kappa;
  if (f.k) cfg.params["k"] = *f.k;
  if (f.k_hat) cfg.params["k_hat"] = *f.k_hat;
  if (f.t_min) cfg.check.t_grid.lo = *f.t_min;
  if (f.t_max) cfg.check.t_grid.hi = *f.t_max;
  if (f.t_points) cfg.check.t_grid.n = *f.t_points;
  if (f.z_min) cfg.check.z_grid.lo = *f.z_min;
  if (f.z_max) cfg.check.z_grid.hi = *f.z_max;
  if (f.z_points) cfg.check.z_grid.n = *f.z_points;
  cfg.check.tol = f.tol;
  cfg.seed = f.seed;
  cfg.samples = f.samples;
  cfg.grid = f.grid;
  cfg.linear_preset = f.preset == "linear";
  cfg.directions = f.directions;
  if (!f.out_csv.empty()) cfg.out_csv = f.out_csv;
  if (!f.out_svg.empty()) cfg.out_svg = f.out_svg;
  cfg.report = f.report == "text" ? rankone::ReportFormat::Text : rankone::ReportFormat::Json;
  if (f.at.size() == 2) cfg.at = rankone::SingularPair{f.at[0], f.at[1]};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-one convexity of planar isotropic energies W = h(l1/l2) + f(l1 l2)"};
  app.require_subcommand(1);
  Flags flags;

  auto* check = app.add_subcommand("check", "reduced one-dimensional criteria, necessary conditions, split conditions");
  auto* classify = app.add_subcommand("classify", "detect mu*K + f and idealized structure");
  auto* oracle = app.add_subcommand("oracle", "brute-force Legendre-Hadamard search");
  auto* stress = app.add_subcommand("stress", "Cauchy stresses, moduli, invertibility");
  auto* scan = app.add_subcommand("scan", "ellipticity domain over (lambda1, lambda2)");
  for (auto* sub : {check, classify, oracle, stress, scan}) add_common(sub, flags);

  oracle->add_option("--seed", flags.seed, "random refinement seed")->capture_default_str();
  oracle->add_option("--samples", flags.samples, "number of random refinements");
  stress->add_option("--at", flags.at, "singular values lambda1 lambda2")->expected(2);
  scan->add_option("--grid", flags.grid, "cells per axis")->capture_default_str();
  scan->add_option("--preset", flags.preset, "log or linear axes")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  scan->add_option("--directions", flags.directions, "eta angles per cell")->capture_default_str();
  scan->add_option("--out-csv", flags.out_csv, "CSV output path");
  scan->add_option("--out-svg", flags.out_svg, "SVG output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return rankone::exit_code::kInputError;
  }

  rankone::Subcommand cmd = rankone::Subcommand::Check;
  if (classify->parsed()) cmd = rankone::Subcommand::Classify;
  if (oracle->parsed()) cmd = rankone::Subcommand::Oracle;
  if (stress->parsed()) cmd = rankone::Subcommand::Stress;
  if (scan->parsed()) cmd = rankone::Subcommand::Scan;
  return rankone::run(to_config(cmd, flags));
}
