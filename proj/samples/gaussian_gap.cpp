#include <cstdio>

#include "coherekit/coherekit.hpp"

namespace ck = coherekit;
namespace cg = coherekit::gaussian;

int main() {
  const ck::cplx alpha(0.0, 1.0);
  const auto coherent = cg::coherent_state(alpha);
  const auto g = cg::gr_real_gap(coherent);
  std::printf("coherent alpha=i: C_Gr=%.12f gap=%.12f closed=%.12f\n", cg::c_gr(coherent), g.gap,
              cg::gap_coherent_closed_form(alpha));

  const ck::cplx zeta(0.0, 0.5);
  const auto squeezed = cg::squeezed_state(zeta);
  const auto s = cg::gr_real_gap(squeezed);
  std::printf("squeezed zeta=0.5i: gap=%.12f (thermal %.12f + entropy %.12f)\n", s.gap, s.thermal_term, s.entropy_term);
  std::printf("  g(sqrt(1+sin^2 sinh^2)) = %.12f   g(1+sin^2 sinh^2) = %.12f\n", cg::gap_squeezed_symplectic(zeta),
              cg::gap_squeezed_paper_formula(zeta));

  const auto rho = cg::random_gaussian_state(2, 7);
  const auto nu = cg::symplectic_eigenvalues(rho.cov()).values;
  const auto m = cg::williamson_decomposition(rho.cov());
  std::printf("random 2-mode state: nu = (%.6f, %.6f), Williamson check %s\n", nu[0], nu[1],
              cg::williamson_check(rho.cov(), m) ? "ok" : "FAILED");
  return std::abs(g.gap - 2.0) <= 1e-9 && cg::williamson_check(rho.cov(), m) ? 0 : 1;
}
