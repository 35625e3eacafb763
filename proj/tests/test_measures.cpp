#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "coherekit/measures.hpp"
#include "coherekit/qstate.hpp"
#include "coherekit/random.hpp"

namespace ck = coherekit;
using ck::cplx;
using ck::CMatrix;

namespace {

std::vector<double> random_probability(std::size_t d, ck::Rng& rng) {
  std::vector<double> p(d);
  for (auto& x : p) x = rng.uniform();
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= s;
  return p;
}

/// Relative entropy of coherence through the real 2d x 2d embedding [[A, -B], [B, A]] of rho = A + iB.
double rel_ent_via_real_embedding(const ck::DensityMatrix& rho) {
  const Eigen::Index d = rho.dim();
  ck::RMatrix big(2 * d, 2 * d);
  big << rho.matrix().real(), -rho.matrix().imag(), rho.matrix().imag(), rho.matrix().real();
  Eigen::SelfAdjointEigenSolver<ck::RMatrix> es(big, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < 2 * d; ++k) {
    const double lam = std::max(0.0, es.eigenvalues()(k));
    if (lam > 0.0) s -= 0.5 * lam * std::log2(lam);
  }
  double s_diag = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double p = rho(j, j).real();
    if (p > 0.0) s_diag -= p * std::log2(p);
  }
  return s_diag - s;
}

}  // namespace

TEST(ConcaveFn, VanishesOnBasisVectors) {
  for (auto f : {ck::ConcaveFn::shannon, ck::ConcaveFn::one_minus_max}) {
    EXPECT_EQ(ck::evaluate(f, {1.0, 0.0, 0.0}), 0.0);
    EXPECT_EQ(ck::evaluate(f, {0.0, 0.0, 1.0}), 0.0);
  }
}

TEST(ConcaveFn, PermutationSymmetricAndConcave) {
  ck::Rng rng(5);
  for (auto f : {ck::ConcaveFn::shannon, ck::ConcaveFn::one_minus_max}) {
    for (int t = 0; t < 200; ++t) {
      const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
      auto p = random_probability(d, rng);
      auto q = random_probability(d, rng);
      auto perm = p;
      std::shuffle(perm.begin(), perm.end(), rng.engine());
      EXPECT_NEAR(ck::evaluate(f, p), ck::evaluate(f, perm), 1e-12);
      std::vector<double> mid(d);
      for (std::size_t j = 0; j < d; ++j) mid[j] = 0.5 * (p[j] + q[j]);
      EXPECT_GE(ck::evaluate(f, mid), 0.5 * (ck::evaluate(f, p) + ck::evaluate(f, q)) - 1e-9);
    }
  }
}

TEST(ConcaveFn, ParsesIds) {
  EXPECT_EQ(ck::parse_concave_fn("shannon"), ck::ConcaveFn::shannon);
  EXPECT_EQ(ck::parse_concave_fn("oneminusmax"), ck::ConcaveFn::one_minus_max);
  EXPECT_THROW(ck::parse_concave_fn("renyi"), ck::ParseError);
}

TEST(L1, Examples) {
  EXPECT_EQ(ck::c_l1(ck::diagonal_state({0.2, 0.3, 0.5})), 0.0);
  EXPECT_NEAR(ck::c_l1(ck::plus_state()), 1.0, 1e-15);
  EXPECT_NEAR(ck::c_l1(ck::bloch_state(0.3, 0.4, 0.1)), 0.5, 1e-15);
  EXPECT_NEAR(ck::c_l1(ck::bloch_state(-0.6, 0.2, 0.0)), std::hypot(0.6, 0.2), 1e-15);
}

TEST(RelEnt, Examples) {
  EXPECT_NEAR(ck::c_rel_ent(ck::diagonal_state({0.2, 0.3, 0.5})), 0.0, 1e-15);
  EXPECT_NEAR(ck::c_rel_ent(ck::plus_state()), 1.0, 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = ck::random_density(3, 3, 300 + s);
    EXPECT_NEAR(ck::c_rel_ent(rho), rel_ent_via_real_embedding(rho), 1e-10);
  }
}

TEST(Tsallis, Examples) {
  for (double a : {0.0, 0.25, 0.5, 1.5, 2.0}) {
    EXPECT_NEAR(ck::c_tsallis(ck::diagonal_state({0.2, 0.3, 0.5}), a), 0.0, 1e-12) << "alpha=" << a;
  }
  EXPECT_NEAR(ck::c_tsallis(ck::plus_state(), 2.0), std::sqrt(2.0) - 1.0, 1e-12);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = ck::random_density(2, 2, 400 + s);
    const double nats = ck::c_rel_ent(rho) * std::log(2.0);
    EXPECT_NEAR(ck::c_tsallis(rho, 1.0 - 1e-4), nats, 1e-2);
    EXPECT_NEAR(ck::c_tsallis(rho, 1.0 + 1e-4), nats, 1e-2);
  }
}

TEST(Tsallis, RejectsAlphaOutsideRange) {
  const auto rho = ck::plus_state();
  EXPECT_THROW(ck::c_tsallis(rho, 1.0), ck::DomainError);
  EXPECT_THROW(ck::c_tsallis(rho, -0.1), ck::DomainError);
  EXPECT_THROW(ck::c_tsallis(rho, 2.5), ck::DomainError);
}

TEST(Tsallis, AlphaZeroIsTheSmallAlphaLimit) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto rho = ck::random_density(3, 3, 500 + s);
    EXPECT_NEAR(ck::c_tsallis(rho, 0.0), ck::c_tsallis(rho, 1e-6), 1e-4);
  }
}

TEST(ConvexRoofPure, Examples) {
  ck::CVector basis = ck::CVector::Zero(3);
  basis(1) = 1.0;
  for (auto f : {ck::ConcaveFn::shannon, ck::ConcaveFn::one_minus_max}) {
    EXPECT_EQ(ck::c_convex_roof_pure(ck::PureState(basis), f), 0.0);
  }
  ck::CVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(ck::c_convex_roof_pure(ck::PureState(plus), ck::ConcaveFn::shannon), 1.0, 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto psi = ck::random_pure(4, 600 + s);
    for (auto f : {ck::ConcaveFn::shannon, ck::ConcaveFn::one_minus_max}) {
      EXPECT_EQ(ck::c_convex_roof_pure(psi, f), ck::c_convex_roof_pure(psi.conjugate(), f));
    }
  }
}

TEST(Faithfulness, ClosedFormMeasures) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto d = static_cast<Eigen::Index>(2 + s % 5);
    const auto rho = ck::random_density(d, d, 700 + s);
    const auto diag = ck::dephase(rho);
    EXPECT_EQ(ck::c_l1(diag), 0.0);
    EXPECT_NEAR(ck::c_rel_ent(diag), 0.0, 1e-12);
    EXPECT_NEAR(ck::c_tsallis(diag, 0.5), 0.0, 1e-12);
    EXPECT_NEAR(ck::c_tsallis(diag, 2.0), 0.0, 1e-12);

    CMatrix weak = diag.matrix();
    weak(0, 1) = 1e-3;
    weak(1, 0) = 1e-3;
    if (ck::linalg::min_eigenvalue(weak) < 0) continue;
    const ck::DensityMatrix slightly(weak);
    EXPECT_GT(ck::c_l1(slightly), 1e-8);
    EXPECT_GT(ck::c_rel_ent(slightly), 1e-8);
    EXPECT_GT(ck::c_tsallis(slightly, 0.5), 1e-8);
    EXPECT_GT(ck::c_tsallis(slightly, 2.0), 1e-8);
  }
}

TEST(Symmetrize, L1IsAlreadySymmetric) {
  const auto sym = ck::symmetrize([](const ck::DensityMatrix& r) { return ck::c_l1(r); });
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto rho = ck::random_density(2 + s % 4, 2 + s % 4, 800 + s);
    EXPECT_NEAR(sym(rho), ck::c_l1(rho), 1e-12);
  }
}

TEST(Symmetrize, IdentitiesForAnyMeasure) {
  auto skewed = [](const ck::DensityMatrix& r) { return std::abs(r(0, 1).imag() + 0.3 * r(0, 1).real()); };
  const auto sym = ck::symmetrize(skewed);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = ck::random_density(3, 3, 900 + s);
    EXPECT_EQ(sym(rho) - sym(ck::conjugate_state(rho)), 0.0);
    const auto real = ck::real_part(rho);
    EXPECT_EQ(sym(real), skewed(real));
  }
}

TEST(RealGap, Examples) {
  const auto l1 = [](const ck::DensityMatrix& r) { return ck::c_l1(r); };
  EXPECT_EQ(ck::real_gap(l1, ck::real_part(ck::random_density(3, 3, 1))), 0.0);
  EXPECT_NEAR(ck::real_gap(l1, ck::bloch_state(0.3, 0.4, 0.0)), 0.2, 1e-15);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = ck::random_density(4, 4, 1000 + s);
    double expected = 0.0;
    for (Eigen::Index j = 0; j < 4; ++j)
      for (Eigen::Index k = 0; k < 4; ++k) expected += std::abs(rho(j, k)) - std::abs(rho(j, k).real());
    EXPECT_NEAR(ck::real_gap(l1, rho), expected, 1e-14);
  }
}

TEST(BlochGapL1, Examples) {
  EXPECT_EQ(ck::bloch_gap_l1(0.0, 0.0), 0.0);
  EXPECT_EQ(ck::bloch_gap_l1(0.0, 0.5), 0.5);
  EXPECT_EQ(ck::bloch_gap_l1(0.0, -0.5), 0.5);
  EXPECT_NEAR(ck::bloch_gap_l1(0.3, 0.4), 0.2, 1e-15);
  EXPECT_THROW(ck::bloch_gap_l1(0.9, 0.9), ck::DomainError);
}

TEST(BlochGapL1, MatchesPipeline) {
  ck::Rng rng(77);
  for (int t = 0; t < 1000; ++t) {
    const double r = std::sqrt(rng.uniform()), phi = rng.uniform(0.0, 2.0 * M_PI);
    const double x = r * std::cos(phi), y = r * std::sin(phi);
    const auto rho = ck::bloch_state(x, y, 0.0);
    EXPECT_NEAR(ck::c_l1(rho) - ck::c_l1(ck::real_part(rho)), ck::bloch_gap_l1(x, y), 1e-12);
  }
}
