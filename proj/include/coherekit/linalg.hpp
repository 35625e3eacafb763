#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "coherekit/core.hpp"

namespace coherekit::linalg {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEig {
  RVector values;
  CMatrix vectors;
};

inline HermitianEig eigh(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigen-decomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RVector eigvalsh(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigen-decomposition did not converge");
  }
  return solver.eigenvalues();
}

inline double min_eigenvalue(const CMatrix& a) { return eigvalsh(a)(0); }

inline CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

/// f(A) for Hermitian A through its spectrum.
inline CMatrix matrix_function(const CMatrix& a, const std::function<double(double)>& f) {
  const auto eig = eigh(a);
  RVector fv(eig.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(eig.values(k));
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues in [-clamp, 0) are treated as zero.
inline CMatrix sqrt_psd(const CMatrix& a) {
  return matrix_function(a, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

inline bool is_hermitian(const CMatrix& a, double eps) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

/// Sum of singular values; Hermitian input uses sum |eigenvalue|.
inline double trace_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 0.0)) return eigvalsh(a).cwiseAbs().sum();
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

/// Entrywise max-abs distance.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const RMatrix& a, const RMatrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline std::vector<double> sorted(const RVector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

/// Binary entropy in bits.
inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Shannon entropy (bits) of a nonnegative vector, 0 log 0 := 0.
inline double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace coherekit::linalg
