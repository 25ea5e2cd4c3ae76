#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rankone/energy.hpp"
#include "rankone/error.hpp"
#include "rankone/grid.hpp"
#include "rankone/oracle.hpp"

namespace rankone {

enum class CellVerdict { Elliptic, NonElliptic, Boundary, Undefined };

inline const char* to_string(CellVerdict v) {
  switch (v) {
    case CellVerdict::Elliptic: return "Elliptic";
    case CellVerdict::NonElliptic: return "NonElliptic";
    case CellVerdict::Boundary: return "Boundary";
    case CellVerdict::Undefined: return "Undefined";
  }
  return "?";
}

struct Cell {
  CellVerdict verdict = CellVerdict::Elliptic;
  double min_margin = 0.0;  // smallest acoustic eigenvalue over eta, relative to the largest
};

/// Per-cell Legendre–Hadamard verdicts on a square grid of singular values.
/// cells[i * n + j] belongs to (lambda1 = axis[i], lambda2 = axis[j]).
struct EllipticityMap {
  Grid grid;
  std::vector<double> axis;
  std::vector<Cell> cells;

  std::size_t size() const { return axis.size(); }
  const Cell& at(std::size_t i, std::size_t j) const { return cells[i * axis.size() + j]; }
  std::size_t count(CellVerdict v) const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [v](const Cell& c) {
      return c.verdict == v;
    }));
  }
};

struct ScanOptions {
  Grid grid = Grid::log(std::pow(10.0, -2.5), std::pow(10.0, 2.5), 256);
  std::size_t directions = 48;
  double tol = 1e-8;

  static ScanOptions linear_preset() {
    ScanOptions o;
    o.grid = Grid::linear(0.05, 15.0, 256);
    return o;
  }
};

/// Verdict at F = diag(l1, l2), minimizing over eta on a uniform angle grid
/// and over xi exactly. The larger singular value is always placed first, so
/// (l1, l2) and (l2, l1) give bit-identical results.
inline Cell cell_verdict(const SplitEnergy& e, double l1, double l2, std::size_t directions = 48, double tol = 1e-8) {
  const double hi = std::max(l1, l2);
  const double lo = std::min(l1, l2);
  const Mat2 F = Mat2::diag(hi, lo);
  Cell c;
  try {
    const PointJets j = point_jets(e, {hi, lo});
    double worst = std::numeric_limits<double>::infinity();
    double magnitude = 0.0;
    for (std::size_t k = 0; k < directions; ++k) {
      const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(directions);
      const AcousticTensor q = analytic_acoustic_tensor(j, F, Vec2::polar(angle));
      if (!std::isfinite(q.q11) || !std::isfinite(q.q12) || !std::isfinite(q.q22)) throw DomainError("non-finite");
      worst = std::min(worst, q.min_eigenvalue());
      magnitude = std::max(magnitude, q.max_abs_eigenvalue());
    }
    double relative = magnitude > 0.0 ? worst / magnitude : 0.0;
    if (std::abs(relative) <= Margin::kNoise) relative = 0.0;
    c.min_margin = relative;
    c.verdict = relative < -tol ? CellVerdict::NonElliptic
                : relative < 0.0 ? CellVerdict::Boundary
                                 : CellVerdict::Elliptic;
  } catch (const DomainError&) {
    c.verdict = CellVerdict::Undefined;
    c.min_margin = std::nan("");
  }
  return c;
}

inline EllipticityMap scan_domain(const SplitEnergy& e, const ScanOptions& opt = {}) {
  EllipticityMap m;
  m.grid = opt.grid;
  m.axis = opt.grid.points();
  const std::size_t n = m.axis.size();
  m.cells.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Cell c = cell_verdict(e, m.axis[i], m.axis[j], opt.directions, opt.tol);
      m.cells[i * n + j] = c;
      m.cells[j * n + i] = c;
    }
  }
  return m;
}

namespace detail {

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace detail

inline std::string to_csv(const EllipticityMap& m) {
  std::string out = "lambda1,lambda2,verdict,min_margin\n";
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Cell& c = m.at(i, j);
      out += detail::format_g9(m.axis[i]) + ',' + detail::format_g9(m.axis[j]) + ',' + to_string(c.verdict) + ',' +
             detail::format_g9(c.min_margin) + '\n';
    }
  }
  return out;
}

inline void emit_csv(const EllipticityMap& m, const std::string& path) { detail::write_file(path, to_csv(m)); }

/// SVG 1.1 heat map, lambda1 to the right and lambda2 upwards.
inline std::string to_svg(const EllipticityMap& m) {
  const std::size_t n = m.size();
  const double plot = 512.0;
  const double margin = 48.0;
  const double cell = plot / static_cast<double>(n);
  const double total = plot + 2.0 * margin;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total << "\" height=\"" << total
    << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n"
    << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CellVerdict v = m.at(i, j).verdict;
      const char* fill = v == CellVerdict::NonElliptic ? "#c0392b" : v == CellVerdict::Undefined ? "#7f7f7f" : "#d5e8d4";
      s << "<rect x=\"" << detail::format_g9(margin + cell * static_cast<double>(i)) << "\" y=\""
        << detail::format_g9(margin + plot - cell * static_cast<double>(j + 1)) << "\" width=\""
        << detail::format_g9(cell) << "\" height=\"" << detail::format_g9(cell) << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  s << "</g>\n"
    << "<line x1=\"" << margin << "\" y1=\"" << margin + plot << "\" x2=\"" << margin + plot << "\" y2=\"" << margin
    << "\" stroke=\"#000000\" stroke-dasharray=\"4 4\"/>\n"
    << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot << "\" height=\"" << plot
    << "\" fill=\"none\" stroke=\"#000000\"/>\n"
    << "<text x=\"" << margin + plot / 2.0 << "\" y=\"" << total - 12.0
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">lambda1</text>\n"
    << "<text x=\"16\" y=\"" << margin + plot / 2.0 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"14\" transform=\"rotate(-90 16 " << margin + plot / 2.0 << ")\">lambda2</text>\n"
    << "<text x=\"" << margin << "\" y=\"" << margin + plot + 16.0
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << detail::format_g9(m.grid.lo) << "</text>\n"
    << "<text x=\"" << margin + plot << "\" y=\"" << margin + plot + 16.0
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << detail::format_g9(m.grid.hi)
    << "</text>\n"
    << "</svg>\n";
  return s.str();
}

inline void emit_svg(const EllipticityMap& m, const std::string& path) { detail::write_file(path, to_svg(m)); }

}  // namespace rankone
