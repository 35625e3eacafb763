#pragma once

// Interior-point (log-barrier, damped Newton) solver for the small convex
// programs behind the optimization-defined coherence measures.
//
// Every program has one vector variable x of length <= 16 and objectives of
// the form  <w, x> + sum_terms tr f(A0 + sum_j x_j s_j u_j u_j^dagger)  plus
// log barriers on x. Gradients and Hessians of tr f(A(x)) come from the
// spectral (Daleckii-Krein) formula, so Newton steps are exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "coherekit/core.hpp"
#include "coherekit/linalg.hpp"
#include "coherekit/qstate.hpp"

namespace coherekit {

struct SolverConfig {
  int max_iters = 400;    ///< total Newton steps across all barrier stages
  double tol = 1e-9;      ///< target duality gap (barrier parameter m/t)
  int restarts = 8;       ///< random restarts, used by non-convex searches
  std::uint64_t seed = 0;

  void validate() const {
    if (!(tol > 0.0)) throw DomainError("solver tol must be > 0");
    if (restarts < 1) throw DomainError("solver restarts must be >= 1");
    if (max_iters < 1) throw DomainError("solver max_iters must be >= 1");
  }
};

struct SolverResult {
  double value = 0.0;       ///< objective at the returned certificate
  RVector certificate;      ///< optimal diagonal vector c (or simplex weights q)
  double feasibility = 0.0; ///< lambda_min of the PSD constraint at the certificate (+inf if none)
  int iterations = 0;
  double gap = 0.0;         ///< duality-gap estimate m / t at exit
  bool converged = false;
};

namespace solver_detail {

/// Derivatives of x -> tr f(A0 + sum_j x_j s_j u_j u_j^dagger) at a given A.
struct SpectralTerm {
  CMatrix a0;              ///< r x r Hermitian base matrix
  CMatrix directions;      ///< r x n, column j is u_j
  RVector signs;           ///< s_j
  std::function<double(double)> f, df, d2f;
  double weight = 1.0;

  CMatrix assemble(const RVector& x) const {
    CMatrix a = a0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (signs(j) == 0.0) continue;
      a += (x(j) * signs(j)) * directions.col(j) * directions.col(j).adjoint();
    }
    return linalg::hermitian_part(a);
  }
};

/// value, gradient, Hessian of weight * tr f(A(x)); returns false outside dom f.
inline bool spectral_derivatives(const SpectralTerm& term, const RVector& x, double& value, RVector& grad,
                                 RMatrix& hess, double domain_floor, bool with_derivatives = true) {
  if (!with_derivatives) {
    const RVector ev = linalg::eigvalsh(term.assemble(x));
    if (ev.size() > 0 && ev(0) <= domain_floor) return false;
    double v = 0.0;
    for (double lam : ev) v += term.f(lam);
    value += term.weight * v;
    return true;
  }
  const auto eig = linalg::eigh(term.assemble(x));
  const Eigen::Index r = eig.values.size();
  const Eigen::Index n = x.size();
  if (r > 0 && eig.values(0) <= domain_floor) return false;

  double v = 0.0;
  RVector d1(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    v += term.f(eig.values(k));
    d1(k) = term.df(eig.values(k));
  }
  // divided differences of f'
  RMatrix gamma(r, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index l = 0; l < r; ++l) {
      const double lk = eig.values(k), ll = eig.values(l);
      const double scale = std::max({std::abs(lk), std::abs(ll), 1e-300});
      if (std::abs(lk - ll) <= 1e-9 * scale) {
        gamma(k, l) = term.d2f(0.5 * (lk + ll));
      } else {
        gamma(k, l) = (d1(k) - d1(l)) / (lk - ll);
      }
    }
  }
  const CMatrix proj = eig.vectors.adjoint() * term.directions;  // r x n
  for (Eigen::Index j = 0; j < n; ++j) {
    if (term.signs(j) == 0.0) continue;
    double g = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) g += d1(k) * std::norm(proj(k, j));
    grad(j) += term.weight * term.signs(j) * g;
  }
  // H_ij = sum_kl gamma_kl Y_kl(i) conj(Y_kl(j)),  Y_kl(i) = s_i proj(k,i) conj(proj(l,i))
  CMatrix y(r * r, n);
  RVector gamma_flat(r * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index l = 0; l < r; ++l) {
      gamma_flat(k * r + l) = gamma(k, l);
      for (Eigen::Index i = 0; i < n; ++i) y(k * r + l, i) = term.signs(i) * proj(k, i) * std::conj(proj(l, i));
    }
  }
  const CMatrix h = y.transpose() * gamma_flat.cast<cplx>().asDiagonal() * y.conjugate();
  hess += term.weight * h.real();
  value += term.weight * v;
  return true;
}

/// Objective pieces: linear term, spectral terms, -sum log x_j over `barrier_mask`.
struct BarrierObjective {
  RVector linear;
  std::vector<SpectralTerm> spectral;
  std::vector<bool> barrier_mask;
  double domain_floor = 0.0;

  bool evaluate(const RVector& x, double t, double& value, RVector& grad, RMatrix& hess,
                bool with_derivatives = true) const {
    const Eigen::Index n = x.size();
    value = t * linear.dot(x);
    grad = RVector::Zero(n);
    hess = RMatrix::Zero(n, n);
    if (with_derivatives) grad = t * linear;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!barrier_mask[static_cast<std::size_t>(j)]) continue;
      if (x(j) <= 0.0) return false;
      value -= std::log(x(j));
      grad(j) -= 1.0 / x(j);
      hess(j, j) += 1.0 / (x(j) * x(j));
    }
    for (const auto& term : spectral) {
      if (!spectral_derivatives(term, x, value, grad, hess, domain_floor, with_derivatives)) return false;
    }
    return true;
  }
};

struct PathOptions {
  double barrier_count;   ///< m, the total barrier degree
  double t0 = 1.0;
  double growth = 10.0;
  bool simplex = false;   ///< enforce sum x = 1 through the KKT system
};

/// Path-following: damped Newton on t * (objective) + barriers for t = t0, t0*growth, ...
/// `t_scales_spectral` marks spectral terms that are part of the objective (scaled by t)
/// rather than barriers.
inline SolverResult follow_central_path(BarrierObjective obj, const std::vector<bool>& t_scales_spectral,
                                        RVector x, const PathOptions& opt, const SolverConfig& cfg) {
  SolverResult res;
  const Eigen::Index n = x.size();
  std::vector<double> base_weights;
  for (const auto& term : obj.spectral) base_weights.push_back(term.weight);

  double t = opt.t0;
  int iterations = 0;
  bool budget_exhausted = false;
  for (;;) {
    for (std::size_t i = 0; i < obj.spectral.size(); ++i) {
      obj.spectral[i].weight = t_scales_spectral[i] ? t * base_weights[i] : base_weights[i];
    }
    for (int inner = 0; inner < 50; ++inner) {
      if (iterations >= cfg.max_iters) {
        budget_exhausted = true;
        break;
      }
      double val;
      RVector g;
      RMatrix h;
      if (!obj.evaluate(x, t, val, g, h)) throw std::logic_error("central path left the barrier domain");
      RVector dx;
      if (opt.simplex) {
        RMatrix kkt = RMatrix::Zero(n + 1, n + 1);
        kkt.topLeftCorner(n, n) = h;
        kkt.block(0, n, n, 1).setOnes();
        kkt.block(n, 0, 1, n).setOnes();
        RVector rhs = RVector::Zero(n + 1);
        rhs.head(n) = -g;
        dx = kkt.fullPivLu().solve(rhs).head(n);
      } else {
        dx = h.ldlt().solve(-g);
      }
      ++iterations;
      const double decrement = -g.dot(dx);
      if (!(decrement >= 0.0) || !dx.allFinite()) break;
      if (decrement / 2.0 <= 1e-9) break;
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 80; ++ls) {
        const RVector trial = x + step * dx;
        double tv;
        RVector tg;
        RMatrix th;
        if (obj.evaluate(trial, t, tv, tg, th, false) && tv <= val - 0.25 * step * decrement) {
          x = trial;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
      if (step * dx.lpNorm<Eigen::Infinity>() <= 1e-14 * (1.0 + x.lpNorm<Eigen::Infinity>())) break;
    }
#ifdef COHEREKIT_DEBUG_SOLVER
    std::fprintf(stderr, "t=%g iters=%d\n", t, iterations);
#endif
    res.gap = opt.barrier_count / t;
    if (budget_exhausted || res.gap <= cfg.tol) break;
    t *= opt.growth;
  }
  res.certificate = x;
  res.iterations = iterations;
  res.converged = !budget_exhausted;
  return res;
}

}  // namespace solver_detail

/// Which diagonal program to solve for a target state rho.
///   dominating:      min sum c    s.t. diag(c) - rho >= 0
///   dominated:       max sum c    s.t. rho - diag(c) >= 0, c >= 0
///   trace_distance:  min ||rho - diag(c)||_tr  over c >= 0
enum class ProgramSense { dominating, dominated, trace_distance };

struct DiagonalProgram {
  DensityMatrix target;
  ProgramSense sense;
};

namespace solver_detail {

inline SolverResult solve_dominating(const DensityMatrix& rho, const SolverConfig& cfg) {
  const Eigen::Index d = rho.dim();
  BarrierObjective obj;
  obj.linear = RVector::Ones(d);
  obj.barrier_mask.assign(static_cast<std::size_t>(d), false);
  SpectralTerm term;
  term.a0 = -rho.matrix();
  term.directions = CMatrix::Identity(d, d);
  term.signs = RVector::Ones(d);
  term.f = [](double x) { return -std::log(x); };
  term.df = [](double x) { return -1.0 / x; };
  term.d2f = [](double x) { return 1.0 / (x * x); };
  obj.spectral.push_back(term);

  const double lmax = rho.eigenvalues().maxCoeff();
  RVector x = RVector::Constant(d, lmax + 1.0);
  PathOptions opt{static_cast<double>(d)};
  auto res = follow_central_path(obj, {false}, x, opt, cfg);
  res.value = res.certificate.sum();
  res.feasibility = linalg::min_eigenvalue(CMatrix(res.certificate.cast<cplx>().asDiagonal()) - rho.matrix());
  return res;
}

inline SolverResult solve_dominated(const DensityMatrix& rho, const SolverConfig& cfg) {
  const Eigen::Index d = rho.dim();
  const auto eig = linalg::eigh(rho.matrix());
  const double rank_floor = 1e-12;
  std::vector<Eigen::Index> range_cols, kernel_cols;
  for (Eigen::Index k = 0; k < d; ++k) (eig.values(k) > rank_floor ? range_cols : kernel_cols).push_back(k);

  // c_j must vanish wherever a kernel vector of rho has weight on |j>
  std::vector<bool> free(static_cast<std::size_t>(d), true);
  for (Eigen::Index j = 0; j < d; ++j) {
    double w = 0.0;
    for (auto k : kernel_cols) w += std::norm(eig.vectors(j, k));
    if (w > 1e-20) free[static_cast<std::size_t>(j)] = false;
  }

  const auto r = static_cast<Eigen::Index>(range_cols.size());
  CMatrix q(d, r);
  for (Eigen::Index i = 0; i < r; ++i) q.col(i) = eig.vectors.col(range_cols[static_cast<std::size_t>(i)]);

  SolverResult res;
  RVector c = RVector::Zero(d);
  const auto n_free = std::count(free.begin(), free.end(), true);
  if (n_free > 0) {
    BarrierObjective obj;
    obj.linear = RVector::Zero(d);
    obj.barrier_mask = free;
    SpectralTerm term;
    term.a0 = linalg::hermitian_part(q.adjoint() * rho.matrix() * q);
    term.directions = q.adjoint();  // column j is Q^dagger |j>
    term.signs = RVector::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      if (free[static_cast<std::size_t>(j)]) {
        obj.linear(j) = -1.0;
        term.signs(j) = -1.0;
      }
    }
    term.f = [](double x) { return -std::log(x); };
    term.df = [](double x) { return -1.0 / x; };
    term.d2f = [](double x) { return 1.0 / (x * x); };
    obj.spectral.push_back(term);

    const double lmin_range = eig.values(range_cols.front());
    RVector x = RVector::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j)
      if (free[static_cast<std::size_t>(j)]) x(j) = 0.5 * lmin_range;
    PathOptions opt{static_cast<double>(r + n_free)};
    res = follow_central_path(obj, {false}, x, opt, cfg);
    c = res.certificate;
    for (Eigen::Index j = 0; j < d; ++j)
      if (!free[static_cast<std::size_t>(j)]) c(j) = 0.0;
  } else {
    res.converged = true;
  }
  res.certificate = c;
  res.value = c.sum();
  res.feasibility = linalg::min_eigenvalue(rho.matrix() - CMatrix(c.cast<cplx>().asDiagonal()));
  return res;
}

inline SolverResult solve_trace_distance(const DensityMatrix& rho, SolverConfig cfg) {
  const Eigen::Index d = rho.dim();
  BarrierObjective obj;
  obj.linear = RVector::Zero(d);
  obj.barrier_mask.assign(static_cast<std::size_t>(d), true);
  obj.domain_floor = -std::numeric_limits<double>::infinity();

  // tr sqrt(A^2 + mu^2) with mu tied to the barrier parameter; re-solved per stage
  RVector x(d);
  for (Eigen::Index j = 0; j < d; ++j) x(j) = std::max(rho(j, j).real(), 1e-3);
  SolverResult res;
  int iterations = 0;
  double t = 1.0;
  for (;;) {
    const double mu = 1.0 / t;
    SpectralTerm term;
    term.a0 = rho.matrix();
    term.directions = CMatrix::Identity(d, d);
    term.signs = RVector::Constant(d, -1.0);
    term.f = [mu](double a) { return std::sqrt(a * a + mu * mu); };
    term.df = [mu](double a) { return a / std::sqrt(a * a + mu * mu); };
    term.d2f = [mu](double a) { return mu * mu / std::pow(a * a + mu * mu, 1.5); };
    obj.spectral = {term};
    SolverConfig stage = cfg;
    stage.max_iters = std::max(1, cfg.max_iters - iterations);
    stage.tol = 2.0 * static_cast<double>(d) / t;  // single stage at this t
    PathOptions opt{2.0 * static_cast<double>(d), t, 10.0};
    res = follow_central_path(obj, {true}, x, opt, stage);
    x = res.certificate;
    iterations += res.iterations;
    res.gap = 2.0 * static_cast<double>(d) / t;
    if (!res.converged || iterations >= cfg.max_iters) {
      res.converged = false;
      break;
    }
    if (res.gap <= cfg.tol) break;
    t *= 10.0;
  }
  res.iterations = iterations;
  res.value = linalg::trace_norm(rho.matrix() - CMatrix(x.cast<cplx>().asDiagonal()));
  res.feasibility = x.minCoeff();
  return res;
}

}  // namespace solver_detail

/// Solves one of the diagonal programs to duality gap cfg.tol.
/// dominating/dominated return value = sum c; trace_distance returns the trace norm.
inline SolverResult solve_diagonal_program(const DiagonalProgram& prog, const SolverConfig& cfg = {}) {
  cfg.validate();
  switch (prog.sense) {
    case ProgramSense::dominating: return solver_detail::solve_dominating(prog.target, cfg);
    case ProgramSense::dominated: return solver_detail::solve_dominated(prog.target, cfg);
    case ProgramSense::trace_distance: return solver_detail::solve_trace_distance(prog.target, cfg);
  }
  throw std::logic_error("unknown program sense");
}

/// max over diagonal states sigma = diag(q) of F(rho, sigma); certificate is q.
/// F is concave in sigma, so the barrier method over the simplex finds the global optimum.
inline SolverResult maximize_fidelity_diagonal(const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  cfg.validate();
  const Eigen::Index d = rho.dim();
  const auto eig = linalg::eigh(rho.matrix());
  std::vector<Eigen::Index> range_cols;
  for (Eigen::Index k = 0; k < d; ++k)
    if (eig.values(k) > 1e-12) range_cols.push_back(k);
  const auto r = static_cast<Eigen::Index>(range_cols.size());
  CMatrix a(r, d);  // column j: Lambda^{1/2} Q^dagger |j>
  RVector sqrt_lam(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto k = range_cols[static_cast<std::size_t>(i)];
    sqrt_lam(i) = std::sqrt(eig.values(k));
    a.row(i) = sqrt_lam(i) * eig.vectors.col(k).adjoint();
  }

  solver_detail::BarrierObjective obj;
  obj.linear = RVector::Zero(d);
  obj.barrier_mask.assign(static_cast<std::size_t>(d), true);
  solver_detail::SpectralTerm term;
  term.a0 = CMatrix::Zero(r, r);
  term.directions = a;
  term.signs = RVector::Ones(d);
  term.f = [](double x) { return -std::sqrt(x); };
  term.df = [](double x) { return -0.5 / std::sqrt(x); };
  term.d2f = [](double x) { return 0.25 / (x * std::sqrt(x)); };
  obj.spectral.push_back(term);

  RVector q = RVector::Constant(d, 1.0 / static_cast<double>(d));
  solver_detail::PathOptions opt{static_cast<double>(d)};
  opt.simplex = true;
  auto res = solver_detail::follow_central_path(obj, {true}, q, opt, cfg);
  q = res.certificate.cwiseMax(0.0);
  q /= q.sum();
  res.certificate = q;
  res.value = fidelity(rho, DensityMatrix::trusted(CMatrix(q.cast<cplx>().asDiagonal())));
  res.feasibility = std::numeric_limits<double>::infinity();
  return res;
}

}  // namespace coherekit
