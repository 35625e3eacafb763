#pragma once

// Bosonic Gaussian states as (mean, covariance) pairs in the quadrature
// ordering (q1, p1, ..., qn, pn), with vacuum covariance I.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "coherekit/core.hpp"
#include "coherekit/linalg.hpp"
#include "coherekit/random.hpp"
#include "coherekit/report.hpp"

namespace coherekit::gaussian {

/// Symplectic form, block diagonal of [[0, 1], [-1, 0]].
inline RMatrix omega(Eigen::Index n) {
  if (n < 1) throw DomainError("omega: n must be >= 1");
  RMatrix w = RMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    w(2 * j, 2 * j + 1) = 1.0;
    w(2 * j + 1, 2 * j) = -1.0;
  }
  return w;
}

/// O = (+) diag(1, -1): the action of complex conjugation on quadratures.
inline RMatrix conjugation_matrix(Eigen::Index n) {
  if (n < 1) throw DomainError("conjugation_matrix: n must be >= 1");
  RMatrix o = RMatrix::Identity(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) o(2 * j + 1, 2 * j + 1) = -1.0;
  return o;
}

/// lambda_min of the Hermitian matrix V + i Omega.
inline double uncertainty_margin(const RMatrix& v) {
  const Eigen::Index n = v.rows() / 2;
  CMatrix h = v.cast<cplx>() + cplx(0, 1) * omega(n).cast<cplx>();
  return linalg::min_eigenvalue(linalg::hermitian_part(h));
}

class GaussianState {
 public:
  GaussianState(RVector mean, RMatrix cov) : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() == 0 || cov_.rows() % 2 != 0) {
      throw InvalidState("covariance must be square of even dimension 2n >= 2");
    }
    if (mean_.size() != cov_.rows()) throw InvalidState("mean length must equal 2n (covariance dimension)");
    if (!mean_.allFinite() || !cov_.allFinite()) throw InvalidState("Gaussian state has non-finite entries");
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > tol::symmetric_cov) {
      throw InvalidState("covariance is not symmetric within 1e-10");
    }
    cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();
    if (uncertainty_margin(cov_) < -tol::uncertainty) {
      throw InvalidState("covariance violates the uncertainty principle V + i Omega >= 0");
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> es(cov_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) <= 0.0) throw InvalidState("covariance is not positive definite");
  }

  Eigen::Index modes() const { return cov_.rows() / 2; }
  const RVector& mean() const { return mean_; }
  const RMatrix& cov() const { return cov_; }

 private:
  RVector mean_;
  RMatrix cov_;
};

/// phi = (b, T, N): mean -> T mean + b, V -> T V T^T + N.
class GaussianChannel {
 public:
  GaussianChannel(RVector b, RMatrix t, RMatrix n) : b_(std::move(b)), t_(std::move(t)), n_(std::move(n)) {
    const Eigen::Index dim = t_.rows();
    if (dim == 0 || dim % 2 != 0 || t_.cols() != dim || n_.rows() != dim || n_.cols() != dim || b_.size() != dim) {
      throw InvalidState("Gaussian channel needs b (2n), T (2n x 2n) and N (2n x 2n) of matching even size");
    }
    if (!b_.allFinite() || !t_.allFinite() || !n_.allFinite()) throw InvalidState("Gaussian channel has non-finite entries");
    if ((n_ - n_.transpose()).cwiseAbs().maxCoeff() > tol::symmetric_cov) {
      throw InvalidState("Gaussian channel N is not symmetric within 1e-10");
    }
    n_ = ((n_ + n_.transpose()) / 2.0).eval();
    if (cp_margin() < -tol::uncertainty) {
      throw InvalidState("Gaussian channel violates complete positivity N + i Omega - i T Omega T^T >= 0");
    }
  }

  Eigen::Index modes() const { return t_.rows() / 2; }
  const RVector& b() const { return b_; }
  const RMatrix& t() const { return t_; }
  const RMatrix& n() const { return n_; }

  /// lambda_min(N + i Omega - i T Omega T^T).
  double cp_margin() const {
    const RMatrix w = omega(modes());
    const RMatrix skew = w - t_ * w * t_.transpose();
    CMatrix h = n_.cast<cplx>() + cplx(0, 1) * skew.cast<cplx>();
    return linalg::min_eigenvalue(linalg::hermitian_part(h));
  }

 private:
  RVector b_;
  RMatrix t_;
  RMatrix n_;
};

/// Ascending symplectic eigenvalues nu_1 <= ... <= nu_n.
struct SymplecticSpectrum {
  std::vector<double> values;
};

// ---------------------------------------------------------------------------

inline GaussianState conjugate_gaussian(const GaussianState& rho) {
  const RMatrix o = conjugation_matrix(rho.modes());
  return GaussianState(o * rho.mean(), o * rho.cov() * o);
}

/// rho' = ((X + O X)/2, (V + O V O)/2): p-quadrature means vanish and q-p correlations drop out.
inline GaussianState real_projection(const GaussianState& rho) {
  const RMatrix o = conjugation_matrix(rho.modes());
  return GaussianState((rho.mean() + o * rho.mean()) / 2.0, (rho.cov() + o * rho.cov() * o) / 2.0);
}

/// p rho [+] (1-p) sigma = (p X + (1-p) Y, p V + (1-p) W).
inline GaussianState boxplus(double p, const GaussianState& rho, const GaussianState& sigma) {
  if (rho.modes() != sigma.modes()) throw DomainError("boxplus: mode counts differ");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("boxplus: p must lie in (0,1)");
  return GaussianState(p * rho.mean() + (1.0 - p) * sigma.mean(), p * rho.cov() + (1.0 - p) * sigma.cov());
}

/// [+]_j p_j rho_j for a probability vector p.
inline GaussianState boxplus(const std::vector<double>& p, const std::vector<GaussianState>& states) {
  if (p.size() != states.size() || states.empty()) throw DomainError("boxplus: need one weight per state");
  double total = 0.0;
  for (double w : p) {
    if (w < 0.0) throw DomainError("boxplus: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("boxplus: weights must sum to 1");
  const Eigen::Index dim = states.front().cov().rows();
  RVector mean = RVector::Zero(dim);
  RMatrix cov = RMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].cov().rows() != dim) throw DomainError("boxplus: mode counts differ");
    mean += p[k] * states[k].mean();
    cov += p[k] * states[k].cov();
  }
  return GaussianState(mean, cov);
}

/// Moduli of the eigenvalues of i Omega V, one per +/- pair, ascending.
///
/// i Omega V is similar to the Hermitian V^{1/2} (i Omega) V^{1/2}, whose
/// spectrum is {+nu_j, -nu_j}. The positive and negative halves must match
/// within relative 1e-8; otherwise V is not a valid positive definite covariance.
inline SymplecticSpectrum symplectic_eigenvalues(const RMatrix& v) {
  if (v.rows() != v.cols() || v.rows() == 0 || v.rows() % 2 != 0) {
    throw DomainError("symplectic_eigenvalues: V must be 2n x 2n");
  }
  const Eigen::Index n = v.rows() / 2;
  Eigen::SelfAdjointEigenSolver<RMatrix> es((v + v.transpose()) / 2.0);
  if (es.eigenvalues()(0) <= 0.0) throw DomainError("symplectic_eigenvalues: V must be positive definite");
  const RMatrix s = es.operatorSqrt();
  const CMatrix h = cplx(0, 1) * (s * omega(n) * s).cast<cplx>();
  const RVector ev = linalg::eigvalsh(linalg::hermitian_part(h));  // ascending: -nu_n..-nu_1, nu_1..nu_n
  SymplecticSpectrum out;
  out.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pos = ev(n + j);
    const double neg = -ev(n - 1 - j);
    if (std::abs(pos - neg) > tol::symplectic_pairing * std::max(1.0, pos)) {
      throw DomainError("symplectic_eigenvalues: eigenvalues of i Omega V do not pair up within 1e-8");
    }
    out.values[static_cast<std::size_t>(j)] = 0.5 * (pos + neg);
  }
  return out;
}

inline RMatrix williamson_form(const std::vector<double>& nu) {
  const auto n = static_cast<Eigen::Index>(nu.size());
  RMatrix d = RMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) d(2 * j, 2 * j) = d(2 * j + 1, 2 * j + 1) = nu[static_cast<std::size_t>(j)];
  return d;
}

inline bool is_symplectic(const RMatrix& m, double eps = 1e-8) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0) return false;
  const RMatrix w = omega(m.rows() / 2);
  return linalg::max_abs_diff(RMatrix(m * w * m.transpose()), w) <= eps;
}

/// True iff M is symplectic and M V M^T = (+) nu_j I2 within 1e-8.
inline bool williamson_check(const RMatrix& v, const RMatrix& m) {
  if (v.rows() != m.rows() || v.cols() != m.cols() || v.rows() != v.cols()) return false;
  if (!is_symplectic(m)) return false;
  const auto spec = symplectic_eigenvalues(v);
  const RMatrix target = williamson_form(spec.values);
  return linalg::max_abs_diff(RMatrix(m * v * m.transpose()), target) <= 1e-8 * std::max(1.0, target.maxCoeff());
}

/// Symplectic M with M V M^T = (+) nu_j I2, nu ascending.
///
/// M = D^{1/2} K^T V^{-1/2}, where the orthogonal K brings the antisymmetric
/// V^{-1/2} Omega V^{-1/2} to the block form (+) (1/nu_j) [[0,1],[-1,0]].
inline RMatrix williamson_decomposition(const RMatrix& v) {
  const Eigen::Index n = v.rows() / 2;
  Eigen::SelfAdjointEigenSolver<RMatrix> es((v + v.transpose()) / 2.0);
  if (es.eigenvalues()(0) <= 0.0) throw DomainError("williamson_decomposition: V must be positive definite");
  const RMatrix s_inv = es.operatorInverseSqrt();
  const RMatrix k = s_inv * omega(n) * s_inv;
  Eigen::RealSchur<RMatrix> schur(k);
  RMatrix basis = schur.matrixU();
  const RMatrix t = schur.matrixT();

  std::vector<std::pair<double, Eigen::Index>> blocks;
  for (Eigen::Index j = 0; j < n; ++j) {
    double a = t(2 * j, 2 * j + 1);
    if (a < 0.0) {
      basis.col(2 * j).swap(basis.col(2 * j + 1));
      a = -a;
    }
    blocks.emplace_back(1.0 / a, j);
  }
  std::stable_sort(blocks.begin(), blocks.end());
  RMatrix ordered(2 * n, 2 * n);
  RVector sqrt_nu(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto src = blocks[static_cast<std::size_t>(j)].second;
    ordered.col(2 * j) = basis.col(2 * src);
    ordered.col(2 * j + 1) = basis.col(2 * src + 1);
    sqrt_nu(2 * j) = sqrt_nu(2 * j + 1) = std::sqrt(blocks[static_cast<std::size_t>(j)].first);
  }
  return sqrt_nu.asDiagonal() * ordered.transpose() * s_inv;
}

/// Entropy of a single-mode thermal state with symplectic eigenvalue x, in bits.
inline double g_function(double x) {
  if (x < 1.0 - tol::symplectic_floor) throw DomainError("g_function: argument below 1 - 1e-8");
  x = std::max(x, 1.0);
  const double up = (x + 1.0) / 2.0;
  const double down = (x - 1.0) / 2.0;
  double g = up * std::log2(up);
  if (down > 0.0) g -= down * std::log2(down);
  return g;
}

inline double entropy_gaussian(const GaussianState& rho) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(rho.cov()).values) s += g_function(nu);
  return s;
}

/// Thermal state (0, (+) nu_j I2) with nu_j = diag entries of V (+ mean^2) averaged per mode.
inline std::vector<double> thermal_occupations(const GaussianState& rho) {
  std::vector<double> nu(static_cast<std::size_t>(rho.modes()));
  const auto& v = rho.cov();
  const auto& x = rho.mean();
  for (Eigen::Index j = 0; j < rho.modes(); ++j) {
    const double value = 0.5 * (v(2 * j, 2 * j) + v(2 * j + 1, 2 * j + 1) + x(2 * j) * x(2 * j) + x(2 * j + 1) * x(2 * j + 1));
    if (value < 1.0 - tol::symplectic_floor) {
      throw InvalidState("thermal reference occupation below 1 - 1e-8 (input violates the uncertainty principle)");
    }
    nu[static_cast<std::size_t>(j)] = value;
  }
  return nu;
}

inline GaussianState thermal_state(const std::vector<double>& nu) {
  return GaussianState(RVector::Zero(2 * static_cast<Eigen::Index>(nu.size())), williamson_form(nu));
}

inline GaussianState thermal_reference(const GaussianState& rho) { return thermal_state(thermal_occupations(rho)); }

/// Gaussian relative entropy of coherence S(rho_bar) - S(rho).
inline double c_gr(const GaussianState& rho) {
  double s_bar = 0.0;
  for (double nu : thermal_occupations(rho)) s_bar += g_function(nu);
  const double v = s_bar - entropy_gaussian(rho);
  return (v < 0.0 && v >= -tol::gaussian) ? 0.0 : v;
}

/// C_Gr(rho) - C_Gr(rho') split into [S(rho_bar) - S(rho_bar')] + [S(rho') - S(rho)].
struct GrRealGap {
  double gap = 0.0;
  double thermal_term = 0.0;
  double entropy_term = 0.0;
};

inline GrRealGap gr_real_gap(const GaussianState& rho) {
  const GaussianState prime = real_projection(rho);
  double s_bar = 0.0, s_bar_prime = 0.0;
  for (double nu : thermal_occupations(rho)) s_bar += g_function(nu);
  for (double nu : thermal_occupations(prime)) s_bar_prime += g_function(nu);
  GrRealGap out;
  out.thermal_term = s_bar - s_bar_prime;
  out.entropy_term = entropy_gaussian(prime) - entropy_gaussian(rho);
  out.gap = c_gr(rho) - c_gr(prime);
  return out;
}

/// Glauber coherent state |alpha>: mean (2 Re alpha, 2 Im alpha), V = I.
inline GaussianState coherent_state(cplx alpha) {
  RVector mean(2);
  mean << 2.0 * alpha.real(), 2.0 * alpha.imag();
  return GaussianState(mean, RMatrix::Identity(2, 2));
}

/// Squeezed vacuum |zeta>, zeta = r e^{i theta}.
inline GaussianState squeezed_state(cplx zeta) {
  const double r = std::abs(zeta);
  const double theta = std::arg(zeta);
  const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
  RMatrix v(2, 2);
  v << ch + std::cos(theta) * sh, std::sin(theta) * sh, std::sin(theta) * sh, ch - std::cos(theta) * sh;
  return GaussianState(RVector::Zero(2), v);
}

/// g[1 + sin^2(theta) sinh^2(2|zeta|)], the printed closed form for the squeezed-state gap.
inline double gap_squeezed_paper_formula(cplx zeta) {
  const double s = std::sin(std::arg(zeta)) * std::sinh(2.0 * std::abs(zeta));
  return g_function(1.0 + s * s);
}

/// g(sqrt(1 + sin^2(theta) sinh^2(2|zeta|))): the squeezed-state gap under nu = |eig(i Omega V)|.
inline double gap_squeezed_symplectic(cplx zeta) {
  const double s = std::sin(std::arg(zeta)) * std::sinh(2.0 * std::abs(zeta));
  return g_function(std::sqrt(1.0 + s * s));
}

/// g[1 + 2|alpha|^2] - g[1 + 2 (Re alpha)^2].
inline double gap_coherent_closed_form(cplx alpha) {
  return g_function(1.0 + 2.0 * std::norm(alpha)) - g_function(1.0 + 2.0 * alpha.real() * alpha.real());
}

inline GaussianState apply_gaussian_channel(const GaussianChannel& phi, const GaussianState& rho) {
  if (phi.modes() != rho.modes()) throw DomainError("apply_gaussian_channel: mode counts differ");
  return GaussianState(phi.t() * rho.mean() + phi.b(), phi.t() * rho.cov() * phi.t().transpose() + phi.n());
}

/// phi* = (O b, O T O, O N O).
inline GaussianChannel conjugate_gaussian_channel(const GaussianChannel& phi) {
  const RMatrix o = conjugation_matrix(phi.modes());
  return GaussianChannel(o * phi.b(), o * phi.t() * o, o * phi.n() * o);
}

inline GaussianChannel identity_gaussian_channel(Eigen::Index n) {
  return GaussianChannel(RVector::Zero(2 * n), RMatrix::Identity(2 * n, 2 * n), RMatrix::Zero(2 * n, 2 * n));
}

inline GaussianChannel displacement_channel(const RVector& b) {
  const Eigen::Index dim = b.size();
  return GaussianChannel(b, RMatrix::Identity(dim, dim), RMatrix::Zero(dim, dim));
}

/// Largest deviation of rho from (0, (+) nu_j I2): mean, off-block entries and within-block anisotropy.
inline double thermal_deviation(const GaussianState& rho) {
  double dev = rho.mean().lpNorm<Eigen::Infinity>();
  const auto& v = rho.cov();
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j)
      if (i / 2 != j / 2 || i != j) dev = std::max(dev, std::abs(v(i, j)));
  for (Eigen::Index j = 0; j < rho.modes(); ++j) dev = std::max(dev, std::abs(v(2 * j, 2 * j) - v(2 * j + 1, 2 * j + 1)));
  return dev;
}

inline bool is_thermal(const GaussianState& rho) {
  if (thermal_deviation(rho) > 1e-9) return false;
  for (Eigen::Index j = 0; j < rho.modes(); ++j) {
    if (rho.cov()(2 * j, 2 * j) < 1.0 - tol::symplectic_floor) return false;
  }
  return true;
}

/// Default probe set: nu_j in {1, 1.5, 3, 10} per mode, at most 16 probes.
inline std::vector<GaussianState> default_thermal_probes(Eigen::Index n) {
  static constexpr double levels[] = {1.0, 1.5, 3.0, 10.0};
  std::vector<GaussianState> probes;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (probes.size() < 16) {
    std::vector<double> nu(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < nu.size(); ++j) nu[j] = levels[idx[j]];
    probes.push_back(thermal_state(nu));
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == 4) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return probes;
}

/// Necessary-condition test for Gaussian-channel incoherence: phi(sigma) must be
/// thermal for every probe, and phi*(sigma) = phi(sigma) (conjugation leaves
/// thermal inputs fixed). slack per probe is minus the larger deviation.
inline CheckReport probe_incoherent_gaussian(const GaussianChannel& phi, const std::vector<GaussianState>& probes) {
  CheckReport report;
  report.check_id = "probe_incoherent_gaussian";
  report.tolerance = 1e-9;
  const GaussianChannel phi_star = conjugate_gaussian_channel(phi);
  long trial = 0;
  for (const auto& sigma : probes) {
    if (!is_thermal(sigma)) throw DomainError("probe_incoherent_gaussian: probe state is not thermal");
    if (sigma.modes() != phi.modes()) throw DomainError("probe_incoherent_gaussian: probe mode count differs");
    const GaussianState out = apply_gaussian_channel(phi, sigma);
    const GaussianState out_star = apply_gaussian_channel(phi_star, sigma);
    double dev = thermal_deviation(out);
    if (out.modes() > 0) {
      for (Eigen::Index j = 0; j < out.modes(); ++j)
        if (out.cov()(2 * j, 2 * j) < 1.0 - tol::symplectic_floor) dev = std::max(dev, 1.0 - out.cov()(2 * j, 2 * j));
    }
    dev = std::max(dev, linalg::max_abs_diff(out.cov(), out_star.cov()));
    dev = std::max(dev, (out.mean() - out_star.mean()).lpNorm<Eigen::Infinity>());
    report.record(trial++, -dev, serialize_exact(sigma.cov()));
  }
  return report;
}

/// x is weakly supermajorized by y: every prefix sum of ascending x is >= that of ascending y.
inline bool weak_supermajorize(std::vector<double> x, std::vector<double> y, double eps = 0.0) {
  if (x.size() != y.size()) throw DomainError("weak_supermajorize: length mismatch");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    if (sx < sy - eps) return false;
  }
  return true;
}

/// Smallest prefix-sum margin min_k (sum x^up - sum y^up) over k.
inline double supermajorization_margin(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw DomainError("supermajorization_margin: length mismatch");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double sx = 0.0, sy = 0.0, margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    margin = std::min(margin, sx - sy);
  }
  return margin;
}

// ---------------------------------------------------------------------------
// Random instances.

/// Haar-ish random unitary from the QR of a Ginibre matrix with phase fix.
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(rng.ginibre(n, n));
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Orthogonal symplectic matrix from an n x n unitary, in the (q1,p1,...) ordering.
inline RMatrix passive_symplectic(const CMatrix& u) {
  const Eigen::Index n = u.rows();
  RMatrix s(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = u(i, j).real(), im = u(i, j).imag();
      s(2 * i, 2 * j) = re;
      s(2 * i, 2 * j + 1) = -im;
      s(2 * i + 1, 2 * j) = im;
      s(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return s;
}

/// Passive * single-mode squeezers * passive, squeezing |r| <= max_squeeze.
inline RMatrix random_symplectic(Eigen::Index n, Rng& rng, double max_squeeze = 1.0) {
  RMatrix z = RMatrix::Identity(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double r = rng.uniform(-max_squeeze, max_squeeze);
    z(2 * j, 2 * j) = std::exp(r);
    z(2 * j + 1, 2 * j + 1) = std::exp(-r);
  }
  return passive_symplectic(random_unitary(n, rng)) * z * passive_symplectic(random_unitary(n, rng));
}

/// V = S^T D S with D = (+) nu_j I2, nu_j uniform in [1, 5]; mean standard normal.
inline GaussianState random_gaussian_state(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DomainError("random_gaussian_state: n must be >= 1");
  Rng rng(seed);
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (auto& x : nu) x = rng.uniform(1.0, 5.0);
  const RMatrix s = random_symplectic(n, rng);
  RMatrix v = s.transpose() * williamson_form(nu) * s;
  v = ((v + v.transpose()) / 2.0).eval();
  RVector mean(2 * n);
  for (Eigen::Index j = 0; j < 2 * n; ++j) mean(j) = rng.normal();
  return GaussianState(mean, v);
}

/// Random completely positive Gaussian channel: T Gaussian, N lifted just above the CP boundary plus a PSD term.
inline GaussianChannel random_gaussian_channel(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index dim = 2 * n;
  const RMatrix t = rng.real_normal(dim, dim) / std::sqrt(static_cast<double>(dim));
  const RMatrix w = omega(n);
  const RMatrix skew = w - t * w * t.transpose();
  const CMatrix h = cplx(0, 1) * skew.cast<cplx>();
  const double lift = std::max(0.0, -linalg::min_eigenvalue(linalg::hermitian_part(h)));
  const RMatrix g = rng.real_normal(dim, dim) * 0.3;
  RMatrix noise = (lift + 0.05) * RMatrix::Identity(dim, dim) + g * g.transpose();
  noise = ((noise + noise.transpose()) / 2.0).eval();
  RVector b(dim);
  for (Eigen::Index j = 0; j < dim; ++j) b(j) = rng.normal();
  return GaussianChannel(b, t, noise);
}

/// Mode-wise phase rotation + phase-insensitive attenuation/amplification:
/// T = (+) t_j R(theta_j), N = (+) m_j I2 with m_j >= |1 - t_j^2|. Maps thermal states to thermal states.
inline GaussianChannel random_incoherent_gaussian_channel(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index dim = 2 * n;
  RMatrix t = RMatrix::Zero(dim, dim);
  RMatrix noise = RMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double gain = rng.uniform(0.0, 1.6);
    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double c = std::cos(theta), s = std::sin(theta);
    t(2 * j, 2 * j) = gain * c;
    t(2 * j, 2 * j + 1) = -gain * s;
    t(2 * j + 1, 2 * j) = gain * s;
    t(2 * j + 1, 2 * j + 1) = gain * c;
    const double m = std::abs(1.0 - gain * gain) + rng.uniform(0.0, 1.0);
    noise(2 * j, 2 * j) = noise(2 * j + 1, 2 * j + 1) = m;
  }
  return GaussianChannel(RVector::Zero(dim), t, noise);
}

}  // namespace coherekit::gaussian
