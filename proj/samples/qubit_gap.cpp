#include <cstdio>

#include "coherekit/coherekit.hpp"

namespace ck = coherekit;

int main() {
  const auto rho = ck::bloch_state(0.3, 0.4, 0.0);
  const auto re = ck::real_part(rho);
  std::printf("%-12s %12s %12s %12s\n", "measure", "C(rho)", "C(Re rho)", "gap");
  for (const char* id : {"l1", "relent", "tsallis:0.5", "tsallis:2", "robustness", "weight", "tracenorm", "geometric"}) {
    const auto m = ck::parse_measure(id);
    const double full = ck::measure_value(m, rho);
    const double real = ck::measure_value(m, re);
    std::printf("%-12s %12.9f %12.9f %12.9f\n", id, full, real, full - real);
  }
  const double closed = ck::bloch_gap_l1(0.3, 0.4);
  const double pipeline = ck::c_l1(rho) - ck::c_l1(re);
  std::printf("closed-form l1 gap sqrt(x^2+y^2)-|x| = %.12f\n", closed);
  return std::abs(pipeline - closed) <= 1e-12 ? 0 : 1;
}
