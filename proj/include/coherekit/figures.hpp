#pragma once

// Grid data behind the three real-part-gap surfaces, emitted as CSV with
// locale-independent 12-significant-digit numbers.

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "coherekit/core.hpp"
#include "coherekit/gaussian.hpp"
#include "coherekit/measures.hpp"
#include "coherekit/qstate.hpp"

namespace coherekit::figures {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int i) const {
    if (i == steps - 1) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

/// Row-major grid (axis1 outer, axis2 inner); each cell carries the value columns, or nothing when outside the domain.
struct FigureGrid {
  Axis axis1;
  Axis axis2;
  std::vector<std::string> columns;
  std::vector<std::optional<std::vector<double>>> cells;

  const std::optional<std::vector<double>>& cell(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(axis2.steps) + static_cast<std::size_t>(j)];
  }
};

inline void validate_axis(const Axis& a) {
  if (a.steps < 2) throw DomainError("axis '" + a.name + "': steps must be >= 2");
  if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max)) {
    throw DomainError("axis '" + a.name + "': need finite min < max");
  }
}

/// General-format rendering with 12 significant digits; -0 prints as 0.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (res.ec != std::errc()) throw DomainError("format_number: value not representable");
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const FigureGrid& grid) {
  os << grid.axis1.name << ',' << grid.axis2.name;
  for (const auto& c : grid.columns) os << ',' << c;
  os << '\n';
  for (int i = 0; i < grid.axis1.steps; ++i) {
    for (int j = 0; j < grid.axis2.steps; ++j) {
      os << format_number(grid.axis1.at(i)) << ',' << format_number(grid.axis2.at(j));
      const auto& c = grid.cell(i, j);
      for (std::size_t k = 0; k < grid.columns.size(); ++k) {
        os << ',';
        if (c) os << format_number((*c)[k]);
      }
      os << '\n';
    }
  }
}

template <class Fn>
FigureGrid tabulate(Axis a1, Axis a2, std::vector<std::string> columns, Fn&& fn) {
  validate_axis(a1);
  validate_axis(a2);
  FigureGrid grid{std::move(a1), std::move(a2), std::move(columns), {}};
  grid.cells.reserve(static_cast<std::size_t>(grid.axis1.steps) * static_cast<std::size_t>(grid.axis2.steps));
  for (int i = 0; i < grid.axis1.steps; ++i)
    for (int j = 0; j < grid.axis2.steps; ++j) grid.cells.push_back(fn(grid.axis1.at(i), grid.axis2.at(j)));
  return grid;
}

/// C_l1(rho) - C_l1(Re rho) for the Bloch state (x, y, 0) over [-1,1]^2; cells outside the unit disk are empty.
///
/// The pipeline value must match sqrt(x^2+y^2) - |x| within 1e-12; a mismatch throws.
inline FigureGrid fig1(int steps) {
  return tabulate({"x", -1.0, 1.0, steps}, {"y", -1.0, 1.0, steps}, {"gap"},
                  [](double x, double y) -> std::optional<std::vector<double>> {
                    if (x * x + y * y > 1.0) return std::nullopt;
                    const auto rho = bloch_state(x, y, 0.0);
                    const double gap = c_l1(rho) - c_l1(real_part(rho));
                    if (std::abs(gap - bloch_gap_l1(x, y)) > 1e-12) {
                      throw DomainError("fig1: pipeline gap deviates from the closed form at (" + format_number(x) + ", " +
                                        format_number(y) + ")");
                    }
                    return std::vector<double>{gap};
                  });
}

/// C_Gr gap of coherent states against g(1 + 2|alpha|^2) - g(1 + 2 Re(alpha)^2).
inline FigureGrid fig2(int steps, double lo = -2.0, double hi = 2.0) {
  return tabulate({"re_alpha", lo, hi, steps}, {"im_alpha", lo, hi, steps}, {"gap_pipeline", "gap_closed_form"},
                  [](double re, double im) -> std::optional<std::vector<double>> {
                    const cplx alpha(re, im);
                    return std::vector<double>{gaussian::gr_real_gap(gaussian::coherent_state(alpha)).gap,
                                               gaussian::gap_coherent_closed_form(alpha)};
                  });
}

/// C_Gr gap of squeezed vacua next to the printed closed form g(1 + sin^2(theta) sinh^2(2|zeta|)) and their difference.
inline FigureGrid fig3(int steps, double lo = -1.5, double hi = 1.5) {
  return tabulate({"re_zeta", lo, hi, steps}, {"im_zeta", lo, hi, steps}, {"gap_pipeline", "gap_paper_formula", "discrepancy"},
                  [](double re, double im) -> std::optional<std::vector<double>> {
                    const cplx zeta(re, im);
                    const double pipeline = gaussian::gr_real_gap(gaussian::squeezed_state(zeta)).gap;
                    const double printed = gaussian::gap_squeezed_paper_formula(zeta);
                    return std::vector<double>{pipeline, printed, printed - pipeline};
                  });
}

}  // namespace coherekit::figures
