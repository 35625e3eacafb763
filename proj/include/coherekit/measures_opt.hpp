#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include "coherekit/core.hpp"
#include "coherekit/measures.hpp"
#include "coherekit/qstate.hpp"
#include "coherekit/random.hpp"
#include "coherekit/solver.hpp"

namespace coherekit {

inline constexpr Eigen::Index kMaxOptimizationDim = 16;
inline constexpr Eigen::Index kMaxConvexRoofDim = 8;

/// Value of an optimization-defined measure together with solver diagnostics.
struct MeasureResult {
  double value = 0.0;
  RVector certificate;
  double feasibility = std::numeric_limits<double>::infinity();
  int iterations = 0;
  double gap = 0.0;
  bool converged = true;
  bool flagged_upper_bound = false;
};

namespace detail {

inline void require_dim(const DensityMatrix& rho, Eigen::Index cap, const char* what) {
  if (rho.dim() > cap) {
    throw DomainError(std::string(what) + ": dimension " + std::to_string(rho.dim()) +
                      " exceeds the supported cap of " + std::to_string(cap));
  }
}

inline MeasureResult from_solver(const SolverResult& s, double value) {
  MeasureResult r;
  r.value = clamp_measure(value);
  r.certificate = s.certificate;
  r.feasibility = s.feasibility;
  r.iterations = s.iterations;
  r.gap = s.gap;
  r.converged = s.converged;
  return r;
}

}  // namespace detail

/// Robustness of coherence.
///
/// (rho + s tau)/(1+s) = sigma with sigma diagonal and tau >= 0 holds iff
/// (1+s) sigma >= rho, so with c = (1+s) diag(sigma):
///   C_R(rho) = min { sum c - 1 : diag(c) >= rho }.
inline MeasureResult c_robustness(const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  detail::require_dim(rho, kMaxOptimizationDim, "c_robustness");
  if (rho.is_diagonal()) {
    MeasureResult r;
    r.certificate = rho.matrix().diagonal().real();
    r.feasibility = 0.0;
    return r;
  }
  const auto s = solve_diagonal_program({rho, ProgramSense::dominating}, cfg);
  return detail::from_solver(s, s.value - 1.0);
}

/// Coherence weight: with c = (1-s) diag(sigma),  C_w(rho) = 1 - max { sum c : rho >= diag(c), c >= 0 }.
inline MeasureResult c_weight(const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  detail::require_dim(rho, kMaxOptimizationDim, "c_weight");
  if (rho.is_diagonal()) {
    MeasureResult r;
    r.certificate = rho.matrix().diagonal().real();
    r.feasibility = 0.0;
    return r;
  }
  const auto s = solve_diagonal_program({rho, ProgramSense::dominated}, cfg);
  return detail::from_solver(s, 1.0 - s.value);
}

/// Modified trace norm of coherence: lambda sigma collapses to one vector c >= 0,
///   C_tr(rho) = min_{c >= 0} || rho - diag(c) ||_tr.
inline MeasureResult c_trace_norm(const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  detail::require_dim(rho, kMaxOptimizationDim, "c_trace_norm");
  if (rho.is_diagonal()) {
    MeasureResult r;
    r.certificate = rho.matrix().diagonal().real();
    r.feasibility = 0.0;
    return r;
  }
  const auto s = solve_diagonal_program({rho, ProgramSense::trace_distance}, cfg);
  return detail::from_solver(s, s.value);
}

/// Geometric coherence 1 - max_{sigma diagonal} F(rho, sigma)^2.
/// Pure states reduce to 1 - max_j |<j|psi>|^2.
inline MeasureResult c_geometric(const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  detail::require_dim(rho, kMaxOptimizationDim, "c_geometric");
  const Eigen::Index d = rho.dim();
  if (rho.is_diagonal()) {
    MeasureResult r;
    r.certificate = rho.matrix().diagonal().real();
    return r;
  }
  const RVector ev = rho.eigenvalues();
  if (ev(d - 1) >= 1.0 - 1e-12) {
    const RVector pops = rho.matrix().diagonal().real();
    Eigen::Index best = 0;
    pops.maxCoeff(&best);
    MeasureResult r;
    r.value = detail::clamp_measure(1.0 - pops(best));
    r.certificate = RVector::Zero(d);
    r.certificate(best) = 1.0;
    return r;
  }
  const auto s = maximize_fidelity_diagonal(rho, cfg);
  return detail::from_solver(s, 1.0 - s.value * s.value);
}

// ---------------------------------------------------------------------------
// Convex roof, mixed states: upper bound by searching pure-state decompositions.

namespace detail {

/// Sum_mu q_mu f(p_mu) for the decomposition psi~ = A U^T, A = V sqrt(Lambda), U^dagger U = I.
inline double decomposition_value(const CMatrix& a, const CMatrix& u, ConcaveFn f) {
  const CMatrix vecs = a * u.transpose();  // d x m, columns are unnormalized members
  double total = 0.0;
  std::vector<double> p(static_cast<std::size_t>(vecs.rows()));
  for (Eigen::Index mu = 0; mu < vecs.cols(); ++mu) {
    const double q = vecs.col(mu).squaredNorm();
    if (q <= 1e-300) continue;
    for (Eigen::Index j = 0; j < vecs.rows(); ++j) p[static_cast<std::size_t>(j)] = std::norm(vecs(j, mu)) / q;
    total += q * evaluate(f, p);
  }
  return total;
}

inline CMatrix orthonormalize_columns(const CMatrix& m) {
  Eigen::HouseholderQR<CMatrix> qr(m);
  return qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
}

/// Best decomposition value for one restart: random isometry + shrinking random local moves.
inline double roof_restart(const CMatrix& a, Eigen::Index m, ConcaveFn f, std::uint64_t seed, int iters) {
  Rng rng(seed);
  const Eigen::Index r = a.cols();
  CMatrix u = orthonormalize_columns(rng.ginibre(m, r));
  double best = decomposition_value(a, u, f);
  double scale = 0.3;
  int fails = 0;
  for (int it = 0; it < iters && scale > 1e-7; ++it) {
    const CMatrix trial = orthonormalize_columns(u + scale * rng.ginibre(m, r));
    const double v = decomposition_value(a, trial, f);
    if (v < best) {
      best = v;
      u = trial;
      fails = 0;
    } else if (++fails >= 20) {
      scale *= 0.5;
      fails = 0;
    }
  }
  return best;
}

inline double roof_search(const DensityMatrix& rho, ConcaveFn f, const SolverConfig& cfg) {
  const auto eig = linalg::eigh(rho.matrix());
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < d; ++k)
    if (eig.values(k) > 1e-14) support.push_back(k);
  const auto r = static_cast<Eigen::Index>(support.size());
  CMatrix a(d, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto k = support[static_cast<std::size_t>(i)];
    a.col(i) = std::sqrt(eig.values(k)) * eig.vectors.col(k);
  }
  // spectral decomposition is always a candidate
  double best = decomposition_value(a, CMatrix::Identity(r, r), f);
  const Eigen::Index m = std::max<Eigen::Index>(r, d * d);
  for (int k = 0; k < cfg.restarts; ++k) {
    best = std::min(best, roof_restart(a, m, f, derive_seed(cfg.seed, "convex-roof", static_cast<std::uint64_t>(k)),
                                       cfg.max_iters * 5));
  }
  return best;
}

}  // namespace detail

/// Upper bound on the convex-roof measure C_f(rho).
///
/// Decompositions of rho* conjugate into decompositions of rho with the same
/// value, so both searches bound C_f(rho) and the reported minimum is
/// invariant under rho -> rho*.
inline MeasureResult c_convex_roof_upper(const DensityMatrix& rho, ConcaveFn f, const SolverConfig& cfg = {}) {
  detail::require_dim(rho, kMaxConvexRoofDim, "c_convex_roof_upper");
  cfg.validate();
  MeasureResult r;
  if (rho.is_diagonal()) return r;
  const RVector ev = rho.eigenvalues();
  if (ev(rho.dim() - 1) >= 1.0 - 1e-12) {
    const auto eig = linalg::eigh(rho.matrix());
    const CVector psi = eig.vectors.col(rho.dim() - 1);
    r.value = c_convex_roof_pure(PureState(psi / psi.norm()), f);
    return r;
  }
  r.flagged_upper_bound = true;
  r.value = std::min(detail::roof_search(rho, f, cfg), detail::roof_search(conjugate_state(rho), f, cfg));
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force grid oracle (d <= 3).

enum class OracleMeasure { robustness, weight, trace_norm, geometric };

struct OracleResult {
  double value = 0.0;
  double step = 0.0;            ///< finest grid spacing reached
  double lipschitz_bound = 0.0; ///< |oracle - optimum| <= lipschitz_bound (convex objective)
  long evaluations = 0;
};

namespace detail {

inline bool dominates(const CMatrix& rho, const std::vector<double>& c, double sign) {
  CMatrix m = sign * rho;
  for (std::size_t j = 0; j < c.size(); ++j) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) -= sign * c[j];
  // sign = -1: diag(c) - rho ; sign = +1: rho - diag(c)
  return linalg::min_eigenvalue(m) >= -1e-12;
}

/// Grid search over a box in `dims` coordinates with repeated zoom. Minimizes; `objective`
/// returns +inf for infeasible points.
///
/// With `lipschitz` > 0 (a bound on |df/dx_k| per coordinate), the next box is the bounding box
/// of every grid point within dims * lipschitz * h of the incumbent, padded by one cell, so a
/// minimizer is never cut off. Otherwise the box is shifted at fixed spacing while the incumbent
/// sits on a face that is not a global bound, then zoomed to +/- 6 cells around it.
template <class Objective>
OracleResult zoom_grid(int dims, std::vector<double> lo, std::vector<double> hi, double target_step,
                       const Objective& objective, double lipschitz = 0.0) {
  constexpr int kCells = 24;
  constexpr int kMaxShifts = 400;
  constexpr int kMaxLevels = 2000;
  OracleResult res;
  res.value = std::numeric_limits<double>::infinity();
  if (dims == 0) {
    res.value = objective(std::vector<double>{});
    res.evaluations = 1;
    return res;
  }
  const auto ud = static_cast<std::size_t>(dims);
  const std::vector<double> global_lo = lo, global_hi = hi;
  std::vector<double> best_point(ud, 0.0), h(ud), point(ud);
  std::vector<int> idx(ud), best_idx(ud, 0);
  std::vector<std::pair<std::vector<int>, double>> values;
  double step = 0.0;
  int shifts = 0;
  for (int level = 0; level < kMaxLevels; ++level) {
    step = 0.0;
    for (std::size_t k = 0; k < ud; ++k) {
      h[k] = (hi[k] - lo[k]) / kCells;
      step = std::max(step, h[k]);
    }
    bool improved = false;
    values.clear();
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (std::size_t k = 0; k < ud; ++k) point[k] = lo[k] + idx[k] * h[k];
      const double v = objective(point);
      ++res.evaluations;
      if (lipschitz > 0.0) values.emplace_back(idx, v);
      if (v < res.value) {
        res.value = v;
        best_point = point;
        best_idx = idx;
        improved = true;
      }
      std::size_t k = 0;
      while (k < ud && ++idx[k] > kCells) idx[k++] = 0;
      if (k == ud) break;
    }
    if (step <= target_step) break;

    if (lipschitz > 0.0) {
      const double slack = static_cast<double>(dims) * lipschitz * step;
      std::vector<int> imin(ud, kCells), imax(ud, 0);
      for (const auto& [i, v] : values) {
        if (!(v <= res.value + slack)) continue;
        for (std::size_t k = 0; k < ud; ++k) {
          imin[k] = std::min(imin[k], i[k]);
          imax[k] = std::max(imax[k], i[k]);
        }
      }
      bool shrinks = false;
      for (std::size_t k = 0; k < ud; ++k) {
        const double new_lo = std::max(global_lo[k], lo[k] + (imin[k] - 1) * h[k]);
        const double new_hi = std::min(global_hi[k], lo[k] + (imax[k] + 1) * h[k]);
        shrinks = shrinks || new_hi - new_lo < 0.75 * (hi[k] - lo[k]);
        lo[k] = new_lo;
        hi[k] = new_hi;
      }
      if (shrinks) continue;
      // flat directions keep the box from shrinking: fall through to the heuristic zoom
    } else {
      bool shifted = false;
      if (improved && shifts < kMaxShifts) {
        for (std::size_t k = 0; k < ud; ++k) {
          const double width = hi[k] - lo[k];
          if (best_idx[k] == 0 && lo[k] > global_lo[k]) {
            lo[k] = std::max(global_lo[k], lo[k] - width / 2);
            hi[k] = lo[k] + width;
            shifted = true;
          } else if (best_idx[k] == kCells && hi[k] < global_hi[k]) {
            hi[k] = std::min(global_hi[k], hi[k] + width / 2);
            lo[k] = hi[k] - width;
            shifted = true;
          }
        }
      }
      if (shifted) {
        ++shifts;
        continue;
      }
    }
    for (std::size_t k = 0; k < ud; ++k) {
      const double span = 6.0 * h[k];
      lo[k] = std::max(global_lo[k], best_point[k] - span);
      hi[k] = std::min(global_hi[k], best_point[k] + span);
    }
  }
  res.step = step;
  return res;
}

/// Bisection for a predicate that is false on [lo, x*) and true on [x*, hi].
/// Returns the final bracket {last false, first true}.
template <class Pred>
std::pair<double, double> bisect_threshold(double lo, double hi, const Pred& pred) {
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return {lo, hi};
}

/// Minimum of a convex function on [lo, hi] by golden-section search (bracket shrunk below 1e-13 relative).
template <class Fn>
double golden_section_min(double lo, double hi, const Fn& f) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::min({f(lo), f(hi), f1, f2});
  while (b - a > 1e-13 * std::max(1.0, hi - lo)) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
      best = std::min(best, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
      best = std::min(best, f2);
    }
  }
  return best;
}

}  // namespace detail

/// Grid oracle for the optimization-defined measures on d <= 3.
///
/// Coordinates c_1..c_{d-1} (or q_1..q_{d-1} on the simplex) are gridded on a
/// 25^(d-1) grid. The last coordinate is eliminated: from the Schur complement
/// (bisection on PSD feasibility when the leading block is singular) for
/// robustness and weight, by golden-section search for the trace norm, and by
/// normalization for the geometric measure. The grid shifts at fixed spacing
/// while the incumbent lies on a movable face, then zooms to +/- 6 cells; all
/// four reduced objectives are convex in the gridded coordinates.
inline OracleResult oracle_grid(const DensityMatrix& rho, OracleMeasure which, double step) {
  const Eigen::Index d = rho.dim();
  if (d > 3) throw DomainError("oracle_grid: supports d <= 3 only");
  if (!(step > 0.0) || step > 1e-2) throw DomainError("oracle_grid: step must lie in (0, 1e-2]");
  const CMatrix& m = rho.matrix();
  const double c_max = 2.0 * rho.eigenvalues().maxCoeff() + 1.0;
  const int free_dims = static_cast<int>(d) - 1;
  const auto ud = static_cast<std::size_t>(d);
  OracleResult res;

  switch (which) {
    case OracleMeasure::robustness: {
      // last coordinate: smallest c_d with diag(c) - rho >= 0, via the Schur complement
      // when the leading block is positive definite, by bisection otherwise
      auto objective = [&](const std::vector<double>& head) {
        const Eigen::Index h = d - 1;
        CMatrix a = -m.topLeftCorner(h, h);
        for (Eigen::Index j = 0; j < h; ++j) a(j, j) += head[static_cast<std::size_t>(j)];
        double last;
        if (h == 0 || linalg::min_eigenvalue(a) > 1e-13) {
          const CVector b = m.block(0, h, h, 1);
          last = m(h, h).real() + (h == 0 ? 0.0 : (b.adjoint() * a.ldlt().solve(b))(0, 0).real());
        } else {
          std::vector<double> c(head);
          c.push_back(0.0);
          auto feasible = [&](double x) {
            c.back() = x;
            return detail::dominates(m, c, -1.0);
          };
          if (!feasible(c_max)) return std::numeric_limits<double>::infinity();
          last = detail::bisect_threshold(0.0, c_max, feasible).second;
        }
        double s = last;
        for (double x : head) s += x;
        return s - 1.0;
      };
      res = detail::zoom_grid(free_dims, std::vector<double>(ud - 1, 0.0), std::vector<double>(ud - 1, c_max), step,
                              objective);
      res.lipschitz_bound = 2.0 * step * static_cast<double>(d);
      break;
    }
    case OracleMeasure::weight: {
      // last coordinate: largest c_d in [0, rho_dd] with rho - diag(c) >= 0
      auto objective = [&](const std::vector<double>& head) {
        const Eigen::Index h = d - 1;
        CMatrix bm = m.topLeftCorner(h, h);
        for (Eigen::Index j = 0; j < h; ++j) bm(j, j) -= head[static_cast<std::size_t>(j)];
        double last;
        if (h == 0 || linalg::min_eigenvalue(bm) > 1e-13) {
          const CVector b = m.block(0, h, h, 1);
          last = m(h, h).real() - (h == 0 ? 0.0 : (b.adjoint() * bm.ldlt().solve(b))(0, 0).real());
          if (last < -1e-12) return std::numeric_limits<double>::infinity();
          last = std::max(last, 0.0);
        } else {
          std::vector<double> c(head);
          c.push_back(0.0);
          auto infeasible = [&](double x) {
            c.back() = x;
            return !detail::dominates(m, c, 1.0);
          };
          if (infeasible(0.0)) return std::numeric_limits<double>::infinity();
          const double hi = m(h, h).real();
          last = infeasible(hi) ? detail::bisect_threshold(0.0, hi, infeasible).first : hi;
        }
        double s = last;
        for (double x : head) s += x;
        return 1.0 - s;
      };
      std::vector<double> hi(ud - 1);
      for (std::size_t j = 0; j + 1 < ud; ++j) hi[j] = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real();
      res = detail::zoom_grid(free_dims, std::vector<double>(ud - 1, 0.0), hi, step, objective);
      res.lipschitz_bound = 2.0 * step * static_cast<double>(d);
      break;
    }
    case OracleMeasure::trace_norm: {
      // last coordinate: exact 1-D minimization (the objective is convex along it) by golden-section search
      auto objective = [&](const std::vector<double>& head) {
        CMatrix a = m;
        for (std::size_t j = 0; j < head.size(); ++j) a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) -= head[j];
        const double base = m(d - 1, d - 1).real();
        auto along = [&](double x) {
          a(d - 1, d - 1) = base - x;
          return linalg::trace_norm(a);
        };
        return detail::golden_section_min(0.0, c_max, along);
      };
      res = detail::zoom_grid(free_dims, std::vector<double>(ud - 1, 0.0), std::vector<double>(ud - 1, c_max), step,
                              objective, 1.0);
      res.lipschitz_bound = step * static_cast<double>(d);
      break;
    }
    case OracleMeasure::geometric: {
      auto objective = [&](const std::vector<double>& head) {
        double rest = 1.0;
        for (double x : head) rest -= x;
        if (rest < -1e-15) return std::numeric_limits<double>::infinity();
        CMatrix sigma = CMatrix::Zero(d, d);
        for (std::size_t j = 0; j < head.size(); ++j) sigma(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = head[j];
        sigma(d - 1, d - 1) = std::max(rest, 0.0);
        const double f = fidelity(rho, DensityMatrix::trusted(sigma));
        return 1.0 - f * f;
      };
      res = detail::zoom_grid(free_dims, std::vector<double>(ud - 1, 0.0), std::vector<double>(ud - 1, 1.0), step,
                              objective);
      // F^2 is not Lipschitz at the simplex boundary; report the interior slope bound
      res.lipschitz_bound = 2.0 * step * static_cast<double>(d);
      break;
    }
  }
  return res;
}

}  // namespace coherekit
