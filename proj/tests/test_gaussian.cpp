#include <gtest/gtest.h>

#include <cmath>

#include "coherekit/gaussian.hpp"
#include "coherekit/random.hpp"

namespace ck = coherekit;
namespace cg = coherekit::gaussian;
using ck::cplx;
using ck::RMatrix;
using ck::RVector;

namespace {

RMatrix diag2(double a, double b) {
  RMatrix m = RMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

cg::GaussianState thermal(std::vector<double> nu) { return cg::thermal_state(nu); }

}  // namespace

TEST(Omega, Examples) {
  RMatrix expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(cg::omega(1), expected);
  for (Eigen::Index n = 1; n <= 3; ++n) {
    const RMatrix w = cg::omega(n), o = cg::conjugation_matrix(n);
    EXPECT_EQ(RMatrix(w * w), RMatrix(-RMatrix::Identity(2 * n, 2 * n)));
    EXPECT_EQ(RMatrix(w * w.transpose()), RMatrix(RMatrix::Identity(2 * n, 2 * n)));
    EXPECT_EQ(RMatrix(o * w), RMatrix(-w * o));
  }
}

TEST(ConjugationMatrix, Examples) {
  EXPECT_EQ(cg::conjugation_matrix(1), diag2(1, -1));
  for (Eigen::Index n = 1; n <= 3; ++n) {
    const RMatrix o = cg::conjugation_matrix(n);
    EXPECT_EQ(RMatrix(o * o), RMatrix(RMatrix::Identity(2 * n, 2 * n)));
    EXPECT_EQ(o, RMatrix(o.transpose()));
  }
}

TEST(GaussianState, Validation) {
  EXPECT_THROW(cg::GaussianState(RVector::Zero(2), diag2(0.5, 0.5)), ck::InvalidState);
  EXPECT_THROW(cg::GaussianState(RVector::Zero(3), RMatrix::Identity(3, 3)), ck::InvalidState);
  EXPECT_THROW(cg::GaussianState(RVector::Zero(4), RMatrix::Identity(2, 2)), ck::InvalidState);
  RMatrix asym = RMatrix::Identity(2, 2);
  asym(0, 1) = 1e-6;
  EXPECT_THROW(cg::GaussianState(RVector::Zero(2), asym), ck::InvalidState);
  RVector nan_mean = RVector::Zero(2);
  nan_mean(0) = std::nan("");
  EXPECT_THROW(cg::GaussianState(nan_mean, RMatrix::Identity(2, 2)), ck::InvalidState);
  EXPECT_NO_THROW(cg::GaussianState(RVector::Zero(2), diag2(2.0, 0.5)));
}

TEST(ConjugateGaussian, Examples) {
  const auto th = thermal({2.5});
  EXPECT_EQ(cg::conjugate_gaussian(th).cov(), th.cov());
  EXPECT_EQ(cg::conjugate_gaussian(th).mean(), th.mean());

  const cplx alpha(0.7, -1.2);
  const auto c = cg::conjugate_gaussian(cg::coherent_state(alpha));
  EXPECT_EQ(c.mean(), cg::coherent_state(std::conj(alpha)).mean());

  const auto rho = cg::random_gaussian_state(3, 5);
  const auto twice = cg::conjugate_gaussian(cg::conjugate_gaussian(rho));
  EXPECT_EQ(twice.mean(), rho.mean());
  EXPECT_EQ(twice.cov(), rho.cov());
}

TEST(RealProjection, Examples) {
  const auto th = thermal({1.5, 3.0});
  EXPECT_EQ(cg::real_projection(th).cov(), th.cov());

  const cplx alpha(0.7, -1.2);
  const auto p = cg::real_projection(cg::coherent_state(alpha));
  EXPECT_EQ(p.mean(), cg::coherent_state(alpha.real()).mean());
  EXPECT_EQ(p.cov(), RMatrix(RMatrix::Identity(2, 2)));

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 10 + s);
    const auto a = cg::real_projection(rho);
    const auto b = cg::conjugate_gaussian(a);
    const auto c = cg::real_projection(cg::conjugate_gaussian(rho));
    EXPECT_LE(ck::linalg::max_abs_diff(a.cov(), b.cov()), 1e-15);
    EXPECT_LE(ck::linalg::max_abs_diff(a.cov(), c.cov()), 1e-15);
    EXPECT_LE((a.mean() - b.mean()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((a.mean() - c.mean()).cwiseAbs().maxCoeff(), 1e-15);
    const auto fixed = cg::real_projection(a);
    EXPECT_LE(ck::linalg::max_abs_diff(fixed.cov(), a.cov()), 1e-15);
  }
}

TEST(Boxplus, Examples) {
  const auto rho = cg::random_gaussian_state(2, 3);
  const auto same = cg::boxplus(0.37, rho, rho);
  EXPECT_LE(ck::linalg::max_abs_diff(same.cov(), rho.cov()), 1e-14);

  const auto mix = cg::boxplus(0.5, thermal({1.0}), thermal({3.0}));
  EXPECT_LE(ck::linalg::max_abs_diff(mix.cov(), thermal({2.0}).cov()), 1e-15);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto r = cg::random_gaussian_state(1 + s % 3, 40 + s);
    const auto lhs = cg::real_projection(r);
    const auto rhs = cg::boxplus(0.5, r, cg::conjugate_gaussian(r));
    EXPECT_LE(ck::linalg::max_abs_diff(lhs.cov(), rhs.cov()), 1e-14);
    EXPECT_LE((lhs.mean() - rhs.mean()).cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_THROW(cg::boxplus(0.0, rho, rho), ck::DomainError);
  EXPECT_THROW(cg::boxplus(0.5, rho, thermal({1.0})), ck::DomainError);
}

TEST(SymplecticEigenvalues, Examples) {
  for (Eigen::Index n = 1; n <= 3; ++n) {
    for (double v : cg::symplectic_eigenvalues(RMatrix::Identity(2 * n, 2 * n)).values) EXPECT_NEAR(v, 1.0, 1e-12);
  }
  const auto nu = cg::symplectic_eigenvalues(thermal({3.0, 1.5, 7.0}).cov()).values;
  ASSERT_EQ(nu.size(), 3u);
  EXPECT_NEAR(nu[0], 1.5, 1e-12);
  EXPECT_NEAR(nu[1], 3.0, 1e-12);
  EXPECT_NEAR(nu[2], 7.0, 1e-12);
  for (double r : {0.1, 0.5, 1.2}) {
    for (double theta : {0.0, 0.7, M_PI / 2}) {
      const auto sq = cg::squeezed_state(std::polar(r, theta));
      EXPECT_NEAR(cg::symplectic_eigenvalues(sq.cov()).values[0], 1.0, 1e-9);
    }
  }
}

TEST(SymplecticEigenvalues, SingleModeIsSqrtDet) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = cg::random_gaussian_state(1, 60 + s);
    EXPECT_NEAR(cg::symplectic_eigenvalues(rho.cov()).values[0], std::sqrt(rho.cov().determinant()), 1e-9);
  }
}

TEST(SymplecticEigenvalues, InvariantUnderConjugation) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 80 + s);
    const auto a = cg::symplectic_eigenvalues(rho.cov()).values;
    const auto b = cg::symplectic_eigenvalues(cg::conjugate_gaussian(rho).cov()).values;
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
  }
}

TEST(SymplecticEigenvalues, RejectsNonPositive) {
  EXPECT_THROW(cg::symplectic_eigenvalues(diag2(1.0, -1.0)), ck::DomainError);
  EXPECT_THROW(cg::symplectic_eigenvalues(RMatrix::Identity(3, 3)), ck::DomainError);
}

TEST(WilliamsonCheck, Examples) {
  const auto th = thermal({1.5, 4.0});
  EXPECT_TRUE(cg::williamson_check(th.cov(), RMatrix::Identity(4, 4)));
  EXPECT_TRUE(cg::williamson_check(RMatrix::Identity(2, 2), cg::omega(1)));
  RMatrix perturbed = RMatrix::Identity(2, 2);
  perturbed(0, 1) = 0.01;
  perturbed(0, 0) = 1.02;
  EXPECT_FALSE(cg::is_symplectic(perturbed));
  EXPECT_FALSE(cg::williamson_check(RMatrix::Identity(2, 2), perturbed));
}

TEST(WilliamsonDecomposition, ProducesSymplecticDiagonalizer) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 100 + s);
    const RMatrix m = cg::williamson_decomposition(rho.cov());
    EXPECT_TRUE(cg::williamson_check(rho.cov(), m)) << "seed " << s;
  }
}

TEST(GFunction, Examples) {
  EXPECT_EQ(cg::g_function(1.0), 0.0);
  EXPECT_NEAR(cg::g_function(3.0), 2.0, 1e-15);
  EXPECT_NEAR(cg::g_function(2.0), 1.5 * std::log2(1.5) + 0.5, 1e-15);
  EXPECT_NEAR(cg::g_function(2.0), 1.3774437510817346, 1e-15);
  EXPECT_EQ(cg::g_function(1.0 - 5e-9), 0.0);
  EXPECT_THROW(cg::g_function(0.9), ck::DomainError);
}

TEST(GFunction, IncreasingAndConcave) {
  const double h = 1e-5;
  for (double x = 1.0 + h; x <= 50.0 - h; x += 0.01) {
    const double gm = cg::g_function(x - h), g0 = cg::g_function(x), gp = cg::g_function(x + h);
    EXPECT_GT(gp - g0, -1e-7);
    EXPECT_LE(gp - 2.0 * g0 + gm, 1e-7);
  }
}

TEST(EntropyGaussian, Examples) {
  EXPECT_NEAR(cg::entropy_gaussian(cg::coherent_state({1.3, -0.4})), 0.0, 1e-12);
  EXPECT_NEAR(cg::entropy_gaussian(thermal({3.0})), 2.0, 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 200 + s);
    EXPECT_NEAR(cg::entropy_gaussian(rho), cg::entropy_gaussian(cg::conjugate_gaussian(rho)), 1e-9);
  }
}

TEST(ThermalReference, Examples) {
  const auto th = thermal({1.5, 3.0});
  EXPECT_LE(ck::linalg::max_abs_diff(cg::thermal_reference(th).cov(), th.cov()), 1e-15);

  const cplx alpha(0.6, -0.8);
  EXPECT_NEAR(cg::thermal_reference(cg::coherent_state(alpha)).cov()(0, 0), 1.0 + 2.0 * std::norm(alpha), 1e-14);

  const cplx zeta = std::polar(0.7, 1.1);
  EXPECT_NEAR(cg::thermal_reference(cg::squeezed_state(zeta)).cov()(0, 0), std::cosh(2.0 * 0.7), 1e-14);

  for (std::uint64_t s = 0; s < 50; ++s) {
    for (double nu : cg::thermal_occupations(cg::random_gaussian_state(1 + s % 3, 300 + s))) EXPECT_GE(nu, 1.0 - 1e-8);
  }
}

TEST(CGr, Examples) {
  EXPECT_EQ(cg::c_gr(thermal({2.0, 5.0})), 0.0);
  EXPECT_NEAR(cg::c_gr(cg::coherent_state(1.0)), 2.0, 1e-12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 400 + s);
    EXPECT_NEAR(cg::c_gr(rho), cg::c_gr(cg::conjugate_gaussian(rho)), 1e-9);
    EXPECT_GT(cg::c_gr(rho), 0.0);
  }
}

TEST(GrRealGap, Examples) {
  const auto real = cg::real_projection(cg::random_gaussian_state(2, 9));
  EXPECT_NEAR(cg::gr_real_gap(real).gap, 0.0, 1e-12);
  for (auto alpha : {cplx(0.3, 0.4), cplx(-1.0, 1.5), cplx(2.0, -0.1)}) {
    const auto g = cg::gr_real_gap(cg::coherent_state(alpha));
    EXPECT_NEAR(g.gap, cg::g_function(1 + 2 * std::norm(alpha)) - cg::g_function(1 + 2 * alpha.real() * alpha.real()), 1e-9);
    EXPECT_NEAR(g.gap, g.thermal_term + g.entropy_term, 1e-12);
  }
  EXPECT_NEAR(cg::gr_real_gap(cg::coherent_state({0.0, 1.0})).gap, 2.0, 1e-9);
}

TEST(CoherentState, Examples) {
  const auto vac = cg::coherent_state(0.0);
  EXPECT_EQ(vac.mean(), RVector(RVector::Zero(2)));
  EXPECT_EQ(vac.cov(), RMatrix(RMatrix::Identity(2, 2)));
  EXPECT_EQ(cg::coherent_state(1.0).mean()(0), 2.0);
  EXPECT_EQ(cg::coherent_state(1.0).mean()(1), 0.0);
  EXPECT_NEAR(cg::symplectic_eigenvalues(cg::coherent_state({0.4, 0.9}).cov()).values[0], 1.0, 1e-12);
}

TEST(SqueezedState, Examples) {
  EXPECT_LE(ck::linalg::max_abs_diff(cg::squeezed_state(0.0).cov(), RMatrix::Identity(2, 2)), 1e-15);
  const double r = 0.8;
  EXPECT_LE(ck::linalg::max_abs_diff(cg::squeezed_state(r).cov(), diag2(std::exp(2 * r), std::exp(-2 * r))), 1e-12);
  const auto v = cg::squeezed_state(cplx(0.0, r)).cov();
  EXPECT_NEAR(v(0, 1), std::sinh(2 * r), 1e-12);
  EXPECT_NEAR(v(0, 0), std::cosh(2 * r), 1e-12);
  EXPECT_NEAR(v(1, 1), std::cosh(2 * r), 1e-12);
  for (double theta = 0.0; theta < 6.3; theta += 0.3) EXPECT_NEAR(cg::squeezed_state(std::polar(1.1, theta)).cov().determinant(), 1.0, 1e-9);
}

TEST(SqueezedState, PipelineMatchesSymplecticClosedForm) {
  for (double re = -1.5; re <= 1.5; re += 0.25) {
    for (double im = -1.5; im <= 1.5; im += 0.25) {
      const cplx zeta(re, im);
      EXPECT_NEAR(cg::gr_real_gap(cg::squeezed_state(zeta)).gap, cg::gap_squeezed_symplectic(zeta), 1e-9);
    }
  }
}

TEST(GapSqueezedPrintedFormula, Examples) {
  EXPECT_EQ(cg::gap_squeezed_paper_formula(0.7), 0.0);
  EXPECT_EQ(cg::gap_squeezed_paper_formula(0.0), 0.0);
  const double r = 0.5;
  EXPECT_NEAR(cg::gap_squeezed_paper_formula(cplx(0.0, r)), cg::g_function(1 + std::pow(std::sinh(2 * r), 2)), 1e-14);
  EXPECT_NEAR(cg::gap_squeezed_symplectic(cplx(0.0, r)), cg::g_function(std::sqrt(1 + std::pow(std::sinh(1.0), 2))), 1e-14);
  EXPECT_NEAR(cg::gap_squeezed_symplectic(cplx(0.0, r)), cg::g_function(std::cosh(1.0)), 1e-14);
  EXPECT_GT(cg::gap_squeezed_paper_formula(cplx(0.0, r)) - cg::gap_squeezed_symplectic(cplx(0.0, r)), 0.5);
}

TEST(ApplyGaussianChannel, Examples) {
  const auto rho = cg::random_gaussian_state(2, 11);
  const auto same = cg::apply_gaussian_channel(cg::identity_gaussian_channel(2), rho);
  EXPECT_EQ(same.cov(), rho.cov());
  EXPECT_EQ(same.mean(), rho.mean());

  RVector b(4);
  b << 1.0, -2.0, 0.5, 0.0;
  const auto shifted = cg::apply_gaussian_channel(cg::displacement_channel(b), rho);
  EXPECT_EQ(shifted.cov(), rho.cov());
  EXPECT_LE((shifted.mean() - rho.mean() - b).cwiseAbs().maxCoeff(), 1e-15);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto n = static_cast<Eigen::Index>(1 + s % 3);
    const auto r = cg::random_gaussian_state(n, 500 + s);
    const auto phi = cg::random_gaussian_channel(n, 600 + s);
    const auto lhs = cg::apply_gaussian_channel(cg::conjugate_gaussian_channel(phi), cg::conjugate_gaussian(r));
    const auto rhs = cg::conjugate_gaussian(cg::apply_gaussian_channel(phi, r));
    EXPECT_LE(ck::linalg::max_abs_diff(lhs.cov(), rhs.cov()), 1e-10);
    EXPECT_LE((lhs.mean() - rhs.mean()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GE(cg::uncertainty_margin(cg::apply_gaussian_channel(phi, r).cov()), -1e-9);
  }
  EXPECT_THROW(cg::apply_gaussian_channel(cg::identity_gaussian_channel(1), rho), ck::DomainError);
}

TEST(GaussianChannel, RejectsNonCompletelyPositive) {
  EXPECT_THROW(cg::GaussianChannel(RVector::Zero(2), RMatrix::Identity(2, 2) * 0.5, RMatrix::Zero(2, 2)), ck::InvalidState);
  EXPECT_NO_THROW(cg::GaussianChannel(RVector::Zero(2), RMatrix::Identity(2, 2) * 0.5, RMatrix::Identity(2, 2) * 0.75));
}

TEST(ConjugateGaussianChannel, Examples) {
  RVector b(2);
  b << 0.7, 0.0;
  const cg::GaussianChannel real(b, diag2(0.8, 0.6), diag2(0.5, 0.9));
  const auto star = cg::conjugate_gaussian_channel(real);
  EXPECT_EQ(star.b(), real.b());
  EXPECT_EQ(star.t(), real.t());
  EXPECT_EQ(star.n(), real.n());

  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto phi = cg::random_gaussian_channel(1 + s % 3, 700 + s);
    const auto twice = cg::conjugate_gaussian_channel(cg::conjugate_gaussian_channel(phi));
    EXPECT_EQ(twice.t(), phi.t());
    EXPECT_EQ(twice.n(), phi.n());
    EXPECT_EQ(twice.b(), phi.b());
    EXPECT_GE(cg::conjugate_gaussian_channel(phi).cp_margin(), -1e-9);
  }
}

TEST(IsThermal, Examples) {
  EXPECT_TRUE(cg::is_thermal(cg::coherent_state(0.0)));
  EXPECT_FALSE(cg::is_thermal(cg::coherent_state(1.0)));
  EXPECT_FALSE(cg::is_thermal(cg::squeezed_state(cplx(0.2, 0.1))));
  EXPECT_TRUE(cg::is_thermal(thermal({1.0, 2.5, 9.0})));
}

TEST(ProbeIncoherentGaussian, Examples) {
  for (Eigen::Index n = 1; n <= 3; ++n) {
    EXPECT_TRUE(cg::probe_incoherent_gaussian(cg::identity_gaussian_channel(n), cg::default_thermal_probes(n)).pass());
    RVector b = RVector::Zero(2 * n);
    b(0) = 0.3;
    EXPECT_FALSE(cg::probe_incoherent_gaussian(cg::displacement_channel(b), cg::default_thermal_probes(n)).pass());
  }
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto n = static_cast<Eigen::Index>(1 + s % 3);
    const auto report = cg::probe_incoherent_gaussian(cg::random_incoherent_gaussian_channel(n, 800 + s), cg::default_thermal_probes(n));
    EXPECT_TRUE(report.pass());
    EXPECT_GE(report.worst_slack, -1e-9);
  }
  EXPECT_FALSE(cg::probe_incoherent_gaussian(cg::random_gaussian_channel(1, 3), cg::default_thermal_probes(1)).pass());
  EXPECT_THROW(cg::probe_incoherent_gaussian(cg::identity_gaussian_channel(1), {cg::coherent_state(1.0)}), ck::DomainError);
}

TEST(DefaultThermalProbes, SizeAndLevels) {
  EXPECT_EQ(cg::default_thermal_probes(1).size(), 4u);
  EXPECT_EQ(cg::default_thermal_probes(2).size(), 16u);
  EXPECT_EQ(cg::default_thermal_probes(3).size(), 16u);
  for (const auto& p : cg::default_thermal_probes(2)) EXPECT_TRUE(cg::is_thermal(p));
}

TEST(WeakSupermajorize, Examples) {
  EXPECT_TRUE(cg::weak_supermajorize({1.0, 2.0}, {1.0, 2.0}));
  EXPECT_TRUE(cg::weak_supermajorize({1.0, 2.0}, {0.5, 1.5}));
  EXPECT_FALSE(cg::weak_supermajorize({0.4, 2.0}, {0.5, 1.5}));
  EXPECT_THROW(cg::weak_supermajorize({1.0}, {1.0, 2.0}), ck::DomainError);
}

TEST(WeakSupermajorize, SymplecticSpectrumOfSum) {
  ck::Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = 1 + t % 3;
    const RMatrix ga = rng.real_normal(2 * n, 2 * n), gb = rng.real_normal(2 * n, 2 * n);
    const RMatrix a = ga * ga.transpose() + 0.1 * RMatrix::Identity(2 * n, 2 * n);
    const RMatrix b = gb * gb.transpose() + 0.1 * RMatrix::Identity(2 * n, 2 * n);
    const auto na = cg::symplectic_eigenvalues(a).values, nb = cg::symplectic_eigenvalues(b).values;
    std::vector<double> sum(na.size());
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = na[k] + nb[k];
    EXPECT_TRUE(cg::weak_supermajorize(cg::symplectic_eigenvalues(a + b).values, sum, 1e-9));
  }
}

TEST(RandomGenerators, AreDeterministicAndPhysical) {
  const auto a = cg::random_gaussian_state(3, 77), b = cg::random_gaussian_state(3, 77);
  EXPECT_EQ(a.cov(), b.cov());
  EXPECT_EQ(a.mean(), b.mean());
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = cg::random_gaussian_state(1 + s % 3, 900 + s);
    for (double nu : cg::symplectic_eigenvalues(rho.cov()).values) {
      EXPECT_GE(nu, 1.0 - 1e-9);
      EXPECT_LE(nu, 5.0 + 1e-9);
    }
  }
  ck::Rng rng(4);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(cg::is_symplectic(cg::random_symplectic(1 + t % 3, rng)));
}
