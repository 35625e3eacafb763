#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "coherekit/core.hpp"
#include "coherekit/linalg.hpp"
#include "coherekit/random.hpp"

namespace coherekit {

/// d x d Hermitian, PSD, unit-trace matrix in the fixed basis {|j>}.
///
/// Construction symmetrizes (rho + rho^dagger)/2 and then checks the
/// invariants; a violation throws InvalidState naming the invariant.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& rho) : rho_(rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
      throw InvalidState("density matrix must be square with dim >= 1");
    }
    if (!rho.allFinite()) throw InvalidState("density matrix has non-finite entries");
    if (!linalg::is_hermitian(rho, tol::hermitian)) {
      throw InvalidState("density matrix is not Hermitian within 1e-10");
    }
    rho_ = linalg::hermitian_part(rho);
    const double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace) {
      throw InvalidState("density matrix trace differs from 1 by more than 1e-10 (trace = " +
                         std::to_string(tr) + ")");
    }
    if (linalg::min_eigenvalue(rho_) < -tol::psd) {
      throw InvalidState("density matrix has an eigenvalue below -1e-10 (not PSD)");
    }
  }

  /// Skips validation. Only for results that are valid by construction.
  static DensityMatrix trusted(CMatrix rho) { return DensityMatrix(std::move(rho), Trusted{}); }

  Eigen::Index dim() const { return rho_.rows(); }
  const CMatrix& matrix() const { return rho_; }
  cplx operator()(Eigen::Index j, Eigen::Index k) const { return rho_(j, k); }

  /// Eigenvalues ascending, entries in [-1e-10, 0) clamped to 0.
  RVector eigenvalues() const {
    RVector ev = linalg::eigvalsh(rho_);
    for (auto& x : ev) x = std::clamp(x, 0.0, 1.0);
    return ev;
  }

  bool is_diagonal(double eps = tol::nonzero) const {
    for (Eigen::Index j = 0; j < dim(); ++j)
      for (Eigen::Index k = 0; k < dim(); ++k)
        if (j != k && std::abs(rho_(j, k)) > eps) return false;
    return true;
  }

  bool is_real(double eps = tol::nonzero) const { return rho_.imag().cwiseAbs().maxCoeff() <= eps; }

 private:
  struct Trusted {};
  DensityMatrix(CMatrix rho, Trusted) : rho_(std::move(rho)) {}

  CMatrix rho_;
};

/// Normalized state vector.
class PureState {
 public:
  explicit PureState(const CVector& amplitudes) : psi_(amplitudes) {
    if (psi_.size() == 0) throw InvalidState("pure state must have dim >= 1");
    if (!psi_.allFinite()) throw InvalidState("pure state has non-finite amplitudes");
    if (std::abs(psi_.squaredNorm() - 1.0) > 1e-10) {
      throw InvalidState("pure state is not normalized within 1e-10");
    }
  }

  Eigen::Index dim() const { return psi_.size(); }
  const CVector& amplitudes() const { return psi_; }

  std::vector<double> populations() const {
    std::vector<double> p(static_cast<std::size_t>(dim()));
    for (Eigen::Index j = 0; j < dim(); ++j) p[static_cast<std::size_t>(j)] = std::norm(psi_(j));
    return p;
  }

  PureState conjugate() const { return PureState(psi_.conjugate()); }

  DensityMatrix density() const { return DensityMatrix::trusted(psi_ * psi_.adjoint()); }

 private:
  CVector psi_;
};

enum class KrausKind { channel, operation };

/// Kraus representation {K_mu}. kind=channel requires sum K^dagger K = I,
/// kind=operation requires I - sum K^dagger K to be PSD (both within 1e-9).
class KrausChannel {
 public:
  KrausChannel(std::vector<CMatrix> kraus, KrausKind kind = KrausKind::channel)
      : kraus_(std::move(kraus)), kind_(kind) {
    if (kraus_.empty()) throw InvalidState("Kraus list is empty");
    dim_ = kraus_.front().rows();
    if (dim_ == 0) throw InvalidState("Kraus operators must have dim >= 1");
    CMatrix sum = CMatrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) {
      if (k.rows() != dim_ || k.cols() != dim_) {
        throw InvalidState("Kraus operators must all be " + std::to_string(dim_) + "x" +
                           std::to_string(dim_));
      }
      if (!k.allFinite()) throw InvalidState("Kraus operator has non-finite entries");
      sum += k.adjoint() * k;
    }
    const CMatrix id = CMatrix::Identity(dim_, dim_);
    if (kind_ == KrausKind::channel) {
      if (linalg::max_abs_diff(sum, id) > tol::kraus_completeness) {
        throw InvalidState("Kraus channel is not trace preserving: sum K^dagger K != I within 1e-9");
      }
    } else if (linalg::min_eigenvalue(linalg::hermitian_part(id - sum)) < -tol::kraus_completeness) {
      throw InvalidState("Kraus operation is not trace non-increasing: I - sum K^dagger K not PSD");
    }
  }

  Eigen::Index dim() const { return dim_; }
  KrausKind kind() const { return kind_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }
  std::size_t size() const { return kraus_.size(); }

 private:
  std::vector<CMatrix> kraus_;
  KrausKind kind_;
  Eigen::Index dim_ = 0;
};

// ---------------------------------------------------------------------------
// Conjugation, real/imaginary parts, dephasing.

inline DensityMatrix conjugate_state(const DensityMatrix& rho) {
  return DensityMatrix::trusted(rho.matrix().conjugate());
}

/// Re(rho) = (rho + rho*)/2.
inline DensityMatrix real_part(const DensityMatrix& rho) {
  return DensityMatrix::trusted(rho.matrix().real().cast<cplx>());
}

/// Im(rho), a real antisymmetric matrix.
inline RMatrix imag_part(const DensityMatrix& rho) { return rho.matrix().imag(); }

inline DensityMatrix dephase(const DensityMatrix& rho) {
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  out.diagonal() = rho.matrix().diagonal().real().cast<cplx>();
  return DensityMatrix::trusted(std::move(out));
}

/// -sum lambda log2 lambda over the clamped spectrum.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  const RVector ev = rho.eigenvalues();
  double s = 0.0;
  for (double x : ev) {
    if (x > 0.0) s -= x * std::log2(x);
  }
  return std::max(s, 0.0);
}

inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("fidelity: dimension mismatch");
  const CMatrix s = linalg::sqrt_psd(rho.matrix());
  const RVector ev = linalg::eigvalsh(linalg::hermitian_part(s * sigma.matrix() * s));
  double f = 0.0;
  for (double x : ev) f += x > 0.0 ? std::sqrt(x) : 0.0;
  return std::clamp(f, 0.0, 1.0);
}

inline double trace_norm(const CMatrix& a) { return linalg::trace_norm(a); }

// ---------------------------------------------------------------------------
// Channels.

inline DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho) {
  if (phi.dim() != rho.dim()) throw DomainError("apply_channel: dimension mismatch");
  if (phi.kind() != KrausKind::channel) {
    throw DomainError("apply_channel: requires a trace-preserving channel");
  }
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : phi.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(linalg::hermitian_part(out));
}

struct Branch {
  double probability;
  DensityMatrix state;
};

/// Post-measurement branches K rho K^dagger / p; branches with p < 1e-12 are dropped.
inline std::vector<Branch> channel_branches(const KrausChannel& phi, const DensityMatrix& rho) {
  if (phi.dim() != rho.dim()) throw DomainError("channel_branches: dimension mismatch");
  std::vector<Branch> out;
  for (const auto& k : phi.kraus()) {
    CMatrix b = linalg::hermitian_part(k * rho.matrix() * k.adjoint());
    const double p = b.trace().real();
    if (p < tol::branch_prune) continue;
    out.push_back({p, DensityMatrix::trusted(b / p)});
  }
  return out;
}

inline KrausChannel conjugate_channel(const KrausChannel& phi) {
  std::vector<CMatrix> ks;
  ks.reserve(phi.size());
  for (const auto& k : phi.kraus()) ks.push_back(k.conjugate());
  return KrausChannel(std::move(ks), phi.kind());
}

/// Every column of every Kraus operator has at most one entry with modulus > 1e-12.
inline bool is_incoherent(const KrausChannel& phi) {
  for (const auto& k : phi.kraus()) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      int nonzeros = 0;
      for (Eigen::Index r = 0; r < k.rows(); ++r)
        if (std::abs(k(r, c)) > tol::nonzero) ++nonzeros;
      if (nonzeros > 1) return false;
    }
  }
  return true;
}

/// p rho1 (+) (1-p) rho2, block diagonal of dimension d1 + d2.
inline DensityMatrix direct_sum(double p, const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("direct_sum: p must lie in [0,1]");
  const auto d1 = rho1.dim();
  const auto d2 = rho2.dim();
  CMatrix out = CMatrix::Zero(d1 + d2, d1 + d2);
  out.topLeftCorner(d1, d1) = p * rho1.matrix();
  out.bottomRightCorner(d2, d2) = (1.0 - p) * rho2.matrix();
  return DensityMatrix::trusted(std::move(out));
}

// ---------------------------------------------------------------------------
// Named states and channels.

inline DensityMatrix basis_state(Eigen::Index d, Eigen::Index j) {
  if (j < 0 || j >= d) throw DomainError("basis_state: index out of range");
  CMatrix m = CMatrix::Zero(d, d);
  m(j, j) = 1.0;
  return DensityMatrix::trusted(std::move(m));
}

inline DensityMatrix maximally_mixed(Eigen::Index d) {
  return DensityMatrix::trusted(CMatrix::Identity(d, d) / static_cast<double>(d));
}

/// |+><+| in dimension d (uniform superposition).
inline DensityMatrix plus_state(Eigen::Index d = 2) {
  return DensityMatrix::trusted(CMatrix::Constant(d, d, 1.0 / static_cast<double>(d)));
}

/// Qubit Bloch form 1/2 [[1+z, x-iy], [x+iy, 1-z]].
inline DensityMatrix bloch_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12) throw DomainError("bloch_state: point outside the Bloch ball");
  CMatrix m(2, 2);
  m << cplx(1 + z, 0), cplx(x, -y), cplx(x, y), cplx(1 - z, 0);
  return DensityMatrix::trusted(m / 2.0);
}

inline DensityMatrix diagonal_state(const std::vector<double>& p) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = p[j];
  return DensityMatrix(m);
}

inline KrausChannel identity_channel(Eigen::Index d) { return KrausChannel({CMatrix::Identity(d, d)}); }

inline KrausChannel dephasing_channel(Eigen::Index d) {
  std::vector<CMatrix> ks;
  for (Eigen::Index j = 0; j < d; ++j) {
    CMatrix k = CMatrix::Zero(d, d);
    k(j, j) = 1.0;
    ks.push_back(std::move(k));
  }
  return KrausChannel(std::move(ks));
}

inline KrausChannel unitary_channel(const CMatrix& u) { return KrausChannel({u}); }

inline CMatrix hadamard() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

inline CMatrix diagonal_unitary(const std::vector<double>& phases) {
  const auto d = static_cast<Eigen::Index>(phases.size());
  CMatrix u = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) u(j, j) = std::polar(1.0, phases[static_cast<std::size_t>(j)]);
  return u;
}

// ---------------------------------------------------------------------------
// Seeded instance generators.

/// G G^dagger / tr(G G^dagger), G a d x rank standard complex Gaussian matrix.
inline DensityMatrix random_density(Eigen::Index d, Eigen::Index rank, std::uint64_t seed) {
  if (d < 1) throw DomainError("random_density: d must be >= 1");
  if (rank < 1 || rank > d) throw DomainError("random_density: rank must lie in [1, d]");
  Rng rng(seed);
  const CMatrix g = rng.ginibre(d, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::trusted(linalg::hermitian_part(rho));
}

inline PureState random_pure(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw DomainError("random_pure: d must be >= 1");
  Rng rng(seed);
  CVector v = rng.ginibre(d, 1).col(0);
  return PureState(v / v.norm());
}

inline KrausChannel random_diag_unitary(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw DomainError("random_diag_unitary: d must be >= 1");
  Rng rng(seed);
  std::vector<double> phases(static_cast<std::size_t>(d));
  for (auto& t : phases) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return unitary_channel(diagonal_unitary(phases));
}

/// Random incoherent channel built from `branches` column-target maps.
///
/// Each map t sends column k to row t(k) with a complex Gaussian amplitude.
/// Columns that share a target row are made Gram-orthogonal by spreading the
/// map over m Kraus copies with phases exp(2 pi i mu h(k) / m), where h(k)
/// is the column's rank within its collision class and m the largest class
/// size. The copies contribute a diagonal term to sum K^dagger K, so a final
/// per-column rescaling gives sum K^dagger K = I without touching the
/// one-nonzero-per-column structure.
inline KrausChannel random_incoherent_channel(Eigen::Index d, int branches, std::uint64_t seed) {
  if (d < 1) throw DomainError("random_incoherent_channel: d must be >= 1");
  if (branches < 1) throw DomainError("random_incoherent_channel: branches must be >= 1");
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(d);

  std::vector<CMatrix> ks;
  RVector column_weight = RVector::Zero(d);
  for (int b = 0; b < branches; ++b) {
    std::vector<std::size_t> target(n);
    std::vector<cplx> amp(n);
    for (std::size_t k = 0; k < n; ++k) {
      target[k] = rng.index(n);
      amp[k] = rng.complex_normal();
    }
    std::vector<std::size_t> rank_in_class(n, 0);
    std::vector<std::size_t> class_size(n, 0);
    for (std::size_t k = 0; k < n; ++k) rank_in_class[k] = class_size[target[k]]++;
    std::size_t copies = 1;
    for (auto s : class_size) copies = std::max(copies, s);

    for (std::size_t mu = 0; mu < copies; ++mu) {
      CMatrix k_op = CMatrix::Zero(d, d);
      for (std::size_t k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(mu * rank_in_class[k]) /
                             static_cast<double>(copies);
        k_op(static_cast<Eigen::Index>(target[k]), static_cast<Eigen::Index>(k)) =
            amp[k] * std::polar(1.0, phase) / std::sqrt(static_cast<double>(copies));
      }
      ks.push_back(std::move(k_op));
    }
    for (std::size_t k = 0; k < n; ++k) column_weight(static_cast<Eigen::Index>(k)) += std::norm(amp[k]);
  }
  for (auto& k_op : ks)
    for (Eigen::Index c = 0; c < d; ++c) k_op.col(c) /= std::sqrt(column_weight(c));
  return KrausChannel(std::move(ks));
}

}  // namespace coherekit
