#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "coherekit/core.hpp"
#include "coherekit/linalg.hpp"
#include "coherekit/qstate.hpp"

namespace coherekit {

/// Concave, permutation-symmetric function on probability vectors with f(1,0,...,0) = 0.
enum class ConcaveFn { shannon, one_minus_max };

inline std::string to_string(ConcaveFn f) {
  switch (f) {
    case ConcaveFn::shannon: return "shannon";
    case ConcaveFn::one_minus_max: return "oneminusmax";
  }
  return "?";
}

inline ConcaveFn parse_concave_fn(const std::string& s) {
  if (s == "shannon") return ConcaveFn::shannon;
  if (s == "oneminusmax") return ConcaveFn::one_minus_max;
  throw ParseError("unknown concave function id '" + s + "' (expected shannon or oneminusmax)");
}

inline double evaluate(ConcaveFn f, const std::vector<double>& p) {
  switch (f) {
    case ConcaveFn::shannon: return linalg::shannon_entropy(p);
    case ConcaveFn::one_minus_max: {
      if (p.empty()) return 0.0;
      return std::max(0.0, 1.0 - *std::max_element(p.begin(), p.end()));
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

namespace detail {
inline double clamp_measure(double v) {
  // tiny negatives are round-off; larger ones are returned untouched so they surface in checks
  return (v < 0.0 && v >= -tol::measure_clamp) ? 0.0 : v;
}
}  // namespace detail

/// l1 norm of coherence: sum of |rho_jk| over j != k.
inline double c_l1(const DensityMatrix& rho) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < rho.dim(); ++j)
    for (Eigen::Index k = 0; k < rho.dim(); ++k)
      if (j != k) s += std::abs(rho(j, k));
  return s;
}

/// Relative entropy of coherence S(rho_diag) - S(rho), in bits.
inline double c_rel_ent(const DensityMatrix& rho) {
  std::vector<double> diag(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index j = 0; j < rho.dim(); ++j) diag[static_cast<std::size_t>(j)] = std::max(0.0, rho(j, j).real());
  return detail::clamp_measure(linalg::shannon_entropy(diag) - von_neumann_entropy(rho));
}

inline bool tsallis_alpha_valid(double alpha) { return alpha >= 0.0 && alpha <= 2.0 && alpha != 1.0; }

/// Tsallis-based coherence (1/(alpha-1)) [sum_j <j|rho^alpha|j>^(1/alpha) - 1],
/// alpha in [0,1) u (1,2]. alpha = 0 is evaluated as the alpha -> 0+ limit.
inline double c_tsallis(const DensityMatrix& rho, double alpha) {
  if (!tsallis_alpha_valid(alpha)) {
    throw DomainError("c_tsallis: alpha must lie in [0,1) u (1,2], got " + std::to_string(alpha));
  }
  const auto eig = linalg::eigh(rho.matrix());
  const Eigen::Index d = rho.dim();
  // eigenvalues below the eigensolver's resolution are exact zeros of rho; lam^alpha would amplify their noise
  const double resolution = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(d);
  double sum = 0.0;
  if (alpha == 0.0) {
    // <j|rho^a|j>^(1/a) -> exp(<j|P log rho P|j>) when |j> lies in the support, 0 otherwise
    for (Eigen::Index j = 0; j < d; ++j) {
      double support_weight = 0.0;
      double log_avg = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double lam = eig.values(k);
        if (lam <= tol::psd) continue;
        const double w = std::norm(eig.vectors(j, k));
        support_weight += w;
        log_avg += w * std::log(lam);
      }
      if (std::abs(support_weight - 1.0) <= 1e-12) sum += std::exp(log_avg);
    }
  } else {
    for (Eigen::Index j = 0; j < d; ++j) {
      double diag = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double lam = eig.values(k);
        if (lam > resolution) diag += std::norm(eig.vectors(j, k)) * std::pow(lam, alpha);
      }
      sum += std::pow(diag, 1.0 / alpha);
    }
  }
  return detail::clamp_measure((sum - 1.0) / (alpha - 1.0));
}

/// f(|<1|psi>|^2, ..., |<d|psi>|^2).
inline double c_convex_roof_pure(const PureState& psi, ConcaveFn f) {
  return std::max(0.0, evaluate(f, psi.populations()));
}

/// C'(rho) = [C(rho) + C(rho*)] / 2 for any measure callable on DensityMatrix.
template <class Measure>
auto symmetrize(Measure measure) {
  return [measure](const DensityMatrix& rho) {
    return 0.5 * (measure(rho) + measure(conjugate_state(rho)));
  };
}

/// C(rho) - C(Re rho).
template <class Measure>
double real_gap(Measure&& measure, const DensityMatrix& rho) {
  return measure(rho) - measure(real_part(rho));
}

/// Closed form of the l1 real-part gap for the qubit Bloch state (x, y, z).
inline double bloch_gap_l1(double x, double y) {
  if (x * x + y * y > 1.0 + 1e-12) throw DomainError("bloch_gap_l1: (x, y) outside the unit disk");
  return std::hypot(x, y) - std::abs(x);
}

}  // namespace coherekit
