#pragma once

// Seeded randomized verification suites. Each check is a per-trial function
// of a derived seed; trials run on a thread pool and are reduced in trial
// order, so a report depends only on (check_id, seed, trials).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "coherekit/core.hpp"
#include "coherekit/gaussian.hpp"
#include "coherekit/io.hpp"
#include "coherekit/measures.hpp"
#include "coherekit/measures_opt.hpp"
#include "coherekit/qstate.hpp"
#include "coherekit/random.hpp"
#include "coherekit/report.hpp"

namespace coherekit::harness {

struct TrialResult {
  double slack = 0.0;
  std::string instance;  ///< exact serialization of the generated instance
};

struct Check {
  std::string id;
  double tolerance = 0.0;
  long trials = 0;
  std::function<TrialResult(std::uint64_t trial_seed, long trial)> trial;
};

inline std::uint64_t trial_seed(std::uint64_t master, const std::string& check_id, long trial) {
  return derive_seed(master, check_id, static_cast<std::uint64_t>(trial));
}

/// COHEREKIT_THREADS if set to a positive integer, otherwise the hardware concurrency.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("COHEREKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

inline TrialResult run_trial(const Check& check, std::uint64_t seed, long trial) {
  try {
    return check.trial(trial_seed(seed, check.id, trial), trial);
  } catch (const std::exception& e) {
    return {std::numeric_limits<double>::lowest(), std::string("exception: ") + e.what()};
  }
}

/// Re-generates one trial; its instance hashes to the report's digest when it is the worst trial.
inline TrialResult replay_trial(const Check& check, std::uint64_t seed, long trial) { return run_trial(check, seed, trial); }

inline CheckReport run_check(const Check& check, std::uint64_t seed, unsigned threads = worker_count()) {
  if (check.trials < 1) throw DomainError("check '" + check.id + "': trial count must be >= 1");
  std::vector<TrialResult> results(static_cast<std::size_t>(check.trials));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long t = next++; t < check.trials; t = next++) results[static_cast<std::size_t>(t)] = run_trial(check, seed, t);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(check.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  CheckReport report;
  report.check_id = check.id;
  report.seed = seed;
  report.tolerance = check.tolerance;
  for (long t = 0; t < check.trials; ++t) report.record(t, results[static_cast<std::size_t>(t)].slack, results[static_cast<std::size_t>(t)].instance);
  return report;
}

// ---------------------------------------------------------------------------
// Instance generation.

struct SuiteConfig {
  long trials = 1000;
  long bloch_trials = 10000;
  std::vector<Eigen::Index> dims{2, 3, 4, 6};
  std::vector<Eigen::Index> opt_dims{2, 3};
  std::vector<Eigen::Index> pure_dims{2, 3, 4, 5, 6};
  SolverConfig solver{};
};

inline std::vector<MeasureSpec> closed_measures() {
  return {parse_measure("l1"), parse_measure("relent"), parse_measure("tsallis:0.5"), parse_measure("tsallis:2")};
}

inline std::vector<MeasureSpec> optimization_measures() {
  return {parse_measure("robustness"), parse_measure("weight"), parse_measure("tracenorm"), parse_measure("geometric")};
}

inline std::vector<MeasureSpec> roof_measures() {
  return {parse_measure("roofpure:shannon"), parse_measure("roofpure:oneminusmax")};
}

namespace detail {

inline Eigen::Index pick_dim(const std::vector<Eigen::Index>& dims, long trial) {
  if (dims.empty()) throw DomainError("dimension list is empty");
  return dims[static_cast<std::size_t>(trial) % dims.size()];
}

/// Random state of random rank in [1, d].
inline DensityMatrix random_state(Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  const auto rank = static_cast<Eigen::Index>(1 + rng.index(static_cast<std::size_t>(d)));
  return random_density(d, rank, mix64(seed));
}

inline std::string serialize(const DensityMatrix& rho) { return serialize_exact(rho.matrix()); }

inline std::string serialize(const KrausChannel& phi) {
  std::string out;
  for (const auto& k : phi.kraus()) out += serialize_exact(k) + ";";
  return out;
}

inline std::string serialize(const gaussian::GaussianState& s) {
  return serialize_exact(RMatrix(s.mean())) + "#" + serialize_exact(s.cov());
}

inline const std::vector<Eigen::Index>& dims_for(const MeasureSpec& m, const SuiteConfig& cfg) {
  return m.optimization_based() ? cfg.opt_dims : cfg.dims;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite-dimensional checks.

/// C(rho) - C(Re rho) >= -tol.
inline Check theorem1_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  return {"theorem1/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const auto rho = detail::random_state(detail::pick_dim(dims, t), s);
            return TrialResult{measure_value(m, rho, cfg) - measure_value(m, real_part(rho), cfg), detail::serialize(rho)};
          }};
}

/// -|C(rho) - C(rho*)| on random mixed states.
inline Check conjugation_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {},
                               const std::string& prefix = "theorem3/") {
  return {prefix + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const auto rho = detail::random_state(detail::pick_dim(dims, t), s);
            const double diff = measure_value(m, rho, cfg) - measure_value(m, conjugate_state(rho), cfg);
            return TrialResult{-std::abs(diff), detail::serialize(rho)};
          }};
}

/// -|C(psi) - C(psi*)| on random pure states.
inline Check pure_conjugation_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  return {"example1/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const auto psi = random_pure(detail::pick_dim(dims, t), s);
            const auto rho = psi.density();
            const auto rho_star = psi.conjugate().density();
            const double diff = measure_value(m, rho, cfg) - measure_value(m, rho_star, cfg);
            return TrialResult{-std::abs(diff), detail::serialize(rho)};
          }};
}

/// (C1): zero on diagonal states (even trials); clearly positive when an off-diagonal entry is large (odd trials).
inline Check faithfulness_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  const double floor = m.optimization_based() ? 1e-3 : 1e-8;
  // geometric coherence is only quadratic in the coherences: C_g >= max_{j != k} |rho_jk|^2
  const double offdiag_threshold = m.kind == MeasureKind::geometric ? 5e-2 : m.optimization_based() ? 1e-2 : 1e-3;
  return {"axiom_c1/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const Eigen::Index d = detail::pick_dim(dims, t / 2);
            if (t % 2 == 0) {
              const auto rho = dephase(detail::random_state(d, s));
              return TrialResult{-measure_value(m, rho, cfg), detail::serialize(rho)};
            }
            const auto rho = detail::random_state(d, s);
            double largest = 0.0;
            for (Eigen::Index j = 0; j < d; ++j)
              for (Eigen::Index k = 0; k < d; ++k)
                if (j != k) largest = std::max(largest, std::abs(rho(j, k)));
            if (largest < offdiag_threshold) return TrialResult{0.0, detail::serialize(rho)};
            return TrialResult{measure_value(m, rho, cfg) - floor, detail::serialize(rho)};
          }};
}

/// (C2): C(phi(rho)) <= C(rho) for random incoherent channels; every tenth trial uses full dephasing.
inline Check monotonicity_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {},
                                const std::string& prefix = "axiom_c2/") {
  return {prefix + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const Eigen::Index d = detail::pick_dim(dims, t);
            const auto rho = detail::random_state(d, s);
            Rng rng(mix64(s ^ 0xc2));
            const KrausChannel phi = (t % 10 == 9) ? dephasing_channel(d)
                                                   : random_incoherent_channel(d, 1 + static_cast<int>(rng.index(3)), mix64(s + 1));
            const double before = measure_value(m, rho, cfg);
            const double after = measure_value(m, apply_channel(phi, rho), cfg);
            return TrialResult{before - after, detail::serialize(rho) + "/" + detail::serialize(phi)};
          }};
}

/// (C3): sum_mu p_mu C(rho_mu) <= C(rho).
inline Check selective_monotonicity_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  return {"axiom_c3/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const Eigen::Index d = detail::pick_dim(dims, t);
            const auto rho = detail::random_state(d, s);
            Rng rng(mix64(s ^ 0xc3));
            const auto phi = random_incoherent_channel(d, 1 + static_cast<int>(rng.index(3)), mix64(s + 1));
            double avg = 0.0;
            for (const auto& br : channel_branches(phi, rho)) avg += br.probability * measure_value(m, br.state, cfg);
            return TrialResult{measure_value(m, rho, cfg) - avg, detail::serialize(rho) + "/" + detail::serialize(phi)};
          }};
}

/// (C4): C(sum p_j rho_j) <= sum p_j C(rho_j) for 2 or 3 random states.
inline Check convexity_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  return {"axiom_c4/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const Eigen::Index d = detail::pick_dim(dims, t);
            Rng rng(s);
            const std::size_t k = 2 + rng.index(2);
            std::vector<double> p(k);
            double total = 0.0;
            for (auto& x : p) total += (x = rng.uniform(0.05, 1.0));
            CMatrix mix = CMatrix::Zero(d, d);
            double avg = 0.0;
            std::string inst;
            for (std::size_t j = 0; j < k; ++j) {
              const auto rho = detail::random_state(d, mix64(s + 1 + j));
              mix += (p[j] / total) * rho.matrix();
              avg += (p[j] / total) * measure_value(m, rho, cfg);
              inst += detail::serialize(rho) + ";";
            }
            return TrialResult{avg - measure_value(m, DensityMatrix(mix), cfg), inst};
          }};
}

/// (C5): C(p rho1 (+) (1-p) rho2) = p C(rho1) + (1-p) C(rho2).
inline Check direct_sum_check(const MeasureSpec& m, long trials, SolverConfig cfg = {}) {
  return {"axiom_c5/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long) {
            Rng rng(s);
            const auto d1 = static_cast<Eigen::Index>(1 + rng.index(3));
            const auto d2 = static_cast<Eigen::Index>(1 + rng.index(3));
            const double p = rng.uniform();
            const auto r1 = detail::random_state(d1, mix64(s + 1));
            const auto r2 = detail::random_state(d2, mix64(s + 2));
            const double lhs = measure_value(m, direct_sum(p, r1, r2), cfg);
            const double rhs = p * measure_value(m, r1, cfg) + (1.0 - p) * measure_value(m, r2, cfg);
            return TrialResult{-std::abs(lhs - rhs), detail::serialize(r1) + ";" + detail::serialize(r2)};
          }};
}

/// C(U rho U^dagger) = C(rho) for random diagonal unitaries.
inline Check diagonal_unitary_check(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  return {"eq2c1/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
            const Eigen::Index d = detail::pick_dim(dims, t);
            const auto rho = detail::random_state(d, s);
            const auto u = random_diag_unitary(d, mix64(s + 1));
            const double diff = measure_value(m, apply_channel(u, rho), cfg) - measure_value(m, rho, cfg);
            return TrialResult{-std::abs(diff), detail::serialize(rho)};
          }};
}

/// Symmetrized measure C' = [C(rho) + C(rho*)]/2: exact conjugation symmetry, C' = C on real states, monotone.
inline std::vector<Check> theorem2_checks(const MeasureSpec& m, std::vector<Eigen::Index> dims, long trials, SolverConfig cfg = {}) {
  auto sym = [m, cfg](const DensityMatrix& rho) {
    return 0.5 * (measure_value(m, rho, cfg) + measure_value(m, conjugate_state(rho), cfg));
  };
  std::vector<Check> out;
  out.push_back({"theorem2/symmetric/" + to_string(m), 0.0, trials, [=](std::uint64_t s, long t) {
                   const auto rho = detail::random_state(detail::pick_dim(dims, t), s);
                   return TrialResult{-std::abs(sym(rho) - sym(conjugate_state(rho))), detail::serialize(rho)};
                 }});
  out.push_back({"theorem2/real_fixed/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
                   const auto rho = real_part(detail::random_state(detail::pick_dim(dims, t), s));
                   return TrialResult{-std::abs(sym(rho) - measure_value(m, rho, cfg)), detail::serialize(rho)};
                 }});
  out.push_back({"theorem2/monotone/" + to_string(m), m.tolerance(), trials, [=](std::uint64_t s, long t) {
                   const Eigen::Index d = detail::pick_dim(dims, t);
                   const auto rho = detail::random_state(d, s);
                   const auto phi = random_incoherent_channel(d, 2, mix64(s + 1));
                   return TrialResult{sym(rho) - sym(apply_channel(phi, rho)), detail::serialize(rho) + "/" + detail::serialize(phi)};
                 }});
  return out;
}

/// C_l1(rho) - C_l1(Re rho) against sqrt(x^2 + y^2) - |x| on random Bloch vectors.
inline Check bloch_identity_check(long trials) {
  return {"eq2c4/l1_bloch", 1e-12, trials, [](std::uint64_t s, long) {
            Rng rng(s);
            double x, y, z;
            do {
              x = rng.uniform(-1.0, 1.0);
              y = rng.uniform(-1.0, 1.0);
              z = rng.uniform(-1.0, 1.0);
            } while (x * x + y * y + z * z > 1.0);
            const auto rho = bloch_state(x, y, z);
            const double pipeline = c_l1(rho) - c_l1(real_part(rho));
            return TrialResult{-std::abs(pipeline - bloch_gap_l1(x, y)), detail::serialize(rho)};
          }};
}

// ---------------------------------------------------------------------------
// Gaussian checks (random n in {1, 2, 3}).

namespace detail {
inline Eigen::Index pick_modes(long trial) { return 1 + trial % 3; }
}  // namespace detail

inline std::vector<Check> gaussian_checks(long trials) {
  using namespace gaussian;
  constexpr double tol = tol::gaussian;
  std::vector<Check> out;

  out.push_back({"gaussian/theorem5", tol, trials, [](std::uint64_t s, long t) {
                   const auto rho = random_gaussian_state(detail::pick_modes(t), s);
                   const auto g = gr_real_gap(rho);
                   return TrialResult{std::min({g.gap, g.thermal_term, g.entropy_term}), detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/corollary1", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto phi = random_incoherent_gaussian_channel(n, s);
                   const auto probe = probe_incoherent_gaussian(phi, default_thermal_probes(n));
                   return TrialResult{probe.worst_slack, serialize_exact(phi.t()) + "#" + serialize_exact(phi.n())};
                 }});

  out.push_back({"gaussian/corollary2", tol, trials, [](std::uint64_t s, long t) {
                   const auto rho = random_gaussian_state(detail::pick_modes(t), s);
                   return TrialResult{entropy_gaussian(real_projection(rho)) - entropy_gaussian(rho), detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/theorem6", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   const auto sigma = random_gaussian_state(n, mix64(s + 1));
                   const double p = Rng(mix64(s + 2)).uniform(0.01, 0.99);
                   const double lhs = entropy_gaussian(boxplus(p, rho, sigma));
                   const double rhs = p * entropy_gaussian(rho) + (1.0 - p) * entropy_gaussian(sigma);
                   return TrialResult{lhs - rhs, detail::serialize(rho) + ";" + detail::serialize(sigma)};
                 }});

  out.push_back({"gaussian/corollary3", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   Rng rng(s);
                   const std::size_t k = 2 + rng.index(3);
                   std::vector<double> p(k);
                   double total = 0.0;
                   for (auto& x : p) total += (x = rng.uniform(0.05, 1.0));
                   for (auto& x : p) x /= total;
                   std::vector<GaussianState> states;
                   double rhs = 0.0;
                   std::string inst;
                   for (std::size_t j = 0; j < k; ++j) {
                     states.push_back(random_gaussian_state(n, mix64(s + 1 + j)));
                     rhs += p[j] * entropy_gaussian(states.back());
                     inst += detail::serialize(states.back()) + ";";
                   }
                   const double sum = std::accumulate(p.begin(), p.end(), 0.0);
                   p.back() += 1.0 - sum;
                   return TrialResult{entropy_gaussian(boxplus(p, states)) - rhs, inst};
                 }});

  out.push_back({"gaussian/lemma1", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   Rng rng(s);
                   const RMatrix ga = rng.real_normal(2 * n, 2 * n);
                   const RMatrix gb = rng.real_normal(2 * n, 2 * n);
                   const RMatrix a = ga * ga.transpose() + 0.1 * RMatrix::Identity(2 * n, 2 * n);
                   const RMatrix b = gb * gb.transpose() + 0.1 * RMatrix::Identity(2 * n, 2 * n);
                   const auto nu_sum = symplectic_eigenvalues(a + b).values;
                   const auto nu_a = symplectic_eigenvalues(a).values;
                   const auto nu_b = symplectic_eigenvalues(b).values;
                   std::vector<double> sum_nu(nu_a.size());
                   for (std::size_t j = 0; j < sum_nu.size(); ++j) sum_nu[j] = nu_a[j] + nu_b[j];
                   return TrialResult{supermajorization_margin(nu_sum, sum_nu), serialize_exact(a) + ";" + serialize_exact(b)};
                 }});

  out.push_back({"gaussian/eq3b1", 1e-10, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   const auto phi = random_gaussian_channel(n, mix64(s + 1));
                   const auto lhs = apply_gaussian_channel(conjugate_gaussian_channel(phi), conjugate_gaussian(rho));
                   const auto rhs = conjugate_gaussian(apply_gaussian_channel(phi, rho));
                   const double dev = std::max(linalg::max_abs_diff(lhs.cov(), rhs.cov()),
                                               (lhs.mean() - rhs.mean()).lpNorm<Eigen::Infinity>());
                   return TrialResult{-dev, detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/theorem4", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   auto sym = [](const GaussianState& r) { return 0.5 * (c_gr(r) + c_gr(conjugate_gaussian(r))); };
                   std::vector<double> nu(static_cast<std::size_t>(n));
                   Rng rng(mix64(s + 1));
                   for (auto& x : nu) x = rng.uniform(1.0, 5.0);
                   const double dev = std::max(std::abs(sym(rho) - sym(conjugate_gaussian(rho))), std::abs(sym(thermal_state(nu))));
                   return TrialResult{-dev, detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/cg2", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   const auto phi = random_incoherent_gaussian_channel(n, mix64(s + 1));
                   return TrialResult{c_gr(rho) - c_gr(apply_gaussian_channel(phi, rho)), detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/spectrum_conjugation", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   const auto a = symplectic_eigenvalues(rho.cov()).values;
                   const auto b = symplectic_eigenvalues(conjugate_gaussian(rho).cov()).values;
                   double dev = 0.0;
                   for (std::size_t j = 0; j < a.size(); ++j) dev = std::max(dev, std::abs(a[j] - b[j]));
                   return TrialResult{-dev, detail::serialize(rho)};
                 }});

  out.push_back({"gaussian/uncertainty", tol, trials, [](std::uint64_t s, long t) {
                   const Eigen::Index n = detail::pick_modes(t);
                   const auto rho = random_gaussian_state(n, s);
                   const auto sigma = random_gaussian_state(n, mix64(s + 1));
                   const auto phi = random_gaussian_channel(n, mix64(s + 2));
                   double margin = uncertainty_margin(conjugate_gaussian(rho).cov());
                   margin = std::min(margin, uncertainty_margin(real_projection(rho).cov()));
                   margin = std::min(margin, uncertainty_margin(boxplus(0.3, rho, sigma).cov()));
                   margin = std::min(margin, uncertainty_margin(apply_gaussian_channel(phi, rho).cov()));
                   return TrialResult{margin, detail::serialize(rho)};
                 }});
  return out;
}

// ---------------------------------------------------------------------------
// Entry points returning reports directly.

inline CheckReport check_theorem1(const MeasureSpec& m, const std::vector<Eigen::Index>& dims, long trials, std::uint64_t seed,
                                  const SolverConfig& cfg = {}) {
  return run_check(theorem1_check(m, dims, trials, cfg), seed);
}

inline CheckReport check_conjugation_invariance(const MeasureSpec& m, const std::vector<Eigen::Index>& dims, long trials,
                                                std::uint64_t seed, const SolverConfig& cfg = {}) {
  return run_check(conjugation_check(m, dims, trials, cfg), seed);
}

/// One report per applicable axiom: C1, C2, diagonal-unitary invariance, plus C3/C4 (closed form) and C5 (l1, relent).
inline std::vector<Check> axiom_checks(const MeasureSpec& m, const std::vector<Eigen::Index>& dims, long trials, const SolverConfig& cfg = {}) {
  std::vector<Check> out{faithfulness_check(m, dims, trials, cfg), monotonicity_check(m, dims, trials, cfg),
                         diagonal_unitary_check(m, dims, trials, cfg)};
  if (!m.optimization_based()) {
    out.push_back(selective_monotonicity_check(m, dims, trials, cfg));
    out.push_back(convexity_check(m, dims, trials, cfg));
  }
  if (m.kind == MeasureKind::l1 || m.kind == MeasureKind::relent) out.push_back(direct_sum_check(m, trials, cfg));
  return out;
}

inline std::vector<CheckReport> check_axioms(const MeasureSpec& m, const std::vector<Eigen::Index>& dims, long trials,
                                             std::uint64_t seed, const SolverConfig& cfg = {}) {
  std::vector<CheckReport> out;
  for (const auto& c : axiom_checks(m, dims, trials, cfg)) out.push_back(run_check(c, seed));
  return out;
}

inline std::vector<CheckReport> check_theorem2(const MeasureSpec& m, const std::vector<Eigen::Index>& dims, long trials,
                                               std::uint64_t seed, const SolverConfig& cfg = {}) {
  std::vector<CheckReport> out;
  for (const auto& c : theorem2_checks(m, dims, trials, cfg)) out.push_back(run_check(c, seed));
  return out;
}

inline std::vector<CheckReport> check_gaussian_suite(long trials, std::uint64_t seed) {
  std::vector<CheckReport> out;
  for (const auto& c : gaussian_checks(trials)) out.push_back(run_check(c, seed));
  return out;
}

/// Every check of the default suite, in a fixed order.
inline std::vector<Check> all_checks(const SuiteConfig& cfg = {}) {
  if (cfg.trials < 1 || cfg.bloch_trials < 1) throw DomainError("trial counts must be >= 1");
  std::vector<Check> out;
  out.push_back(bloch_identity_check(cfg.bloch_trials));
  const auto closed = closed_measures();
  const auto opt = optimization_measures();
  std::vector<MeasureSpec> measures = closed;
  measures.insert(measures.end(), opt.begin(), opt.end());

  for (const auto& m : measures) out.push_back(theorem1_check(m, detail::dims_for(m, cfg), cfg.trials, cfg.solver));
  for (const auto& m : measures) out.push_back(conjugation_check(m, detail::dims_for(m, cfg), cfg.trials, cfg.solver));

  std::vector<MeasureSpec> with_roof = measures;
  for (const auto& m : roof_measures()) with_roof.push_back(m);
  for (const auto& m : with_roof) out.push_back(pure_conjugation_check(m, cfg.pure_dims, cfg.trials, cfg.solver));
  for (const auto& m : measures) out.push_back(conjugation_check(m, {2}, cfg.trials, cfg.solver, "example2/"));

  for (const auto& m : measures)
    for (auto& c : axiom_checks(m, detail::dims_for(m, cfg), cfg.trials, cfg.solver)) out.push_back(std::move(c));
  for (const auto& m : measures)
    for (auto& c : theorem2_checks(m, detail::dims_for(m, cfg), cfg.trials, cfg.solver)) out.push_back(std::move(c));
  for (auto& c : gaussian_checks(cfg.trials)) out.push_back(std::move(c));
  return out;
}

/// Checks whose id contains `filter` (all checks when empty).
inline std::vector<Check> select_checks(const std::vector<Check>& checks, const std::string& filter) {
  std::vector<Check> out;
  for (const auto& c : checks)
    if (filter.empty() || c.id.find(filter) != std::string::npos) out.push_back(c);
  return out;
}

struct Summary {
  std::vector<CheckReport> checks;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.pass(); });
  }
};

inline Summary run_checks(const std::vector<Check>& checks, std::uint64_t seed,
                          const std::function<void(const CheckReport&)>& on_report = {}) {
  Summary s;
  for (const auto& c : checks) {
    s.checks.push_back(run_check(c, seed));
    if (on_report) on_report(s.checks.back());
  }
  return s;
}

inline Summary run_all(std::uint64_t seed, const SuiteConfig& cfg = {}, const std::string& filter = "") {
  const auto selected = select_checks(all_checks(cfg), filter);
  if (selected.empty()) throw ParseError("no check id matches filter '" + filter + "'");
  return run_checks(selected, seed);
}

/// {"checks": [...], "pass": bool}.
inline json summary_to_json(const Summary& s) {
  json checks = json::array();
  for (const auto& r : s.checks) checks.push_back(report_to_json(r));
  return {{"checks", checks}, {"pass", s.pass()}};
}

}  // namespace coherekit::harness
