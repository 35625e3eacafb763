#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coherekit/coherekit.hpp"

namespace ck = coherekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidState = 3;
constexpr int kExitCheckFailures = 4;

struct Options {
  std::string state_path;
  std::string measure = "l1";
  std::string out_path;
  std::string format;
  std::string filter;
  std::uint64_t seed = 1;
  long trials = 1000;
  int steps = 41;
  double range_min = 0.0;
  double range_max = 0.0;
  bool range_set = false;
  double tol = 1e-9;
  int max_iters = 400;
  int restarts = 8;
  bool quiet = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw ck::ParseError("cannot open output file '" + opt.out_path + "'");
  out << text;
}

ck::SolverConfig solver_config(const Options& opt) {
  ck::SolverConfig cfg;
  cfg.tol = opt.tol;
  cfg.max_iters = opt.max_iters;
  cfg.restarts = opt.restarts;
  cfg.seed = opt.seed;
  cfg.validate();
  return cfg;
}

std::string json_or_csv(const Options& opt, const ck::json& j) {
  if (opt.format.empty() || opt.format == "json") return j.dump(2) + "\n";
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() || value.is_object()) continue;
    head << (first ? "" : ",") << key;
    row << (first ? "" : ",");
    if (value.is_number_float()) row << ck::figures::format_number(value.get<double>());
    else if (value.is_string()) row << value.get<std::string>();
    else row << value.dump();
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

int cmd_measure(const Options& opt) {
  const auto spec = ck::parse_measure(opt.measure);
  const auto rho = ck::density_from_json(ck::parse_json_text(ck::read_file(opt.state_path), opt.state_path));
  const auto result = ck::evaluate_measure(spec, rho, solver_config(opt));
  emit(opt, json_or_csv(opt, ck::measure_result_to_json(spec, result)));
  return kExitOk;
}

int cmd_gap(const Options& opt) {
  const auto spec = ck::parse_measure(opt.measure);
  const auto rho = ck::density_from_json(ck::parse_json_text(ck::read_file(opt.state_path), opt.state_path));
  const auto cfg = solver_config(opt);
  const auto full = ck::evaluate_measure(spec, rho, cfg);
  const auto re = ck::evaluate_measure(spec, ck::real_part(rho), cfg);
  ck::json out = {{"measure", ck::to_string(spec)},
                  {"value_rho", full.value},
                  {"value_re_rho", re.value},
                  {"gap", full.value - re.value},
                  {"flagged_upper_bound", full.flagged_upper_bound || re.flagged_upper_bound}};
  emit(opt, json_or_csv(opt, out));
  return kExitOk;
}

int cmd_gaussian_measure(const Options& opt) {
  const auto rho = ck::gaussian_state_from_json(ck::parse_json_text(ck::read_file(opt.state_path), opt.state_path));
  const auto gap = ck::gaussian::gr_real_gap(rho);
  ck::json nu = ck::json::array();
  for (double v : ck::gaussian::symplectic_eigenvalues(rho.cov()).values) nu.push_back(v);
  ck::json out = {{"modes", rho.modes()},
                  {"c_gr", ck::gaussian::c_gr(rho)},
                  {"gr_real_gap", gap.gap},
                  {"thermal_term", gap.thermal_term},
                  {"entropy_term", gap.entropy_term},
                  {"entropy", ck::gaussian::entropy_gaussian(rho)},
                  {"symplectic_eigenvalues", nu}};
  emit(opt, json_or_csv(opt, out));
  return kExitOk;
}

ck::json grid_to_json(const ck::figures::FigureGrid& g) {
  ck::json rows = ck::json::array();
  for (int i = 0; i < g.axis1.steps; ++i)
    for (int j = 0; j < g.axis2.steps; ++j) {
      ck::json row = {{g.axis1.name, g.axis1.at(i)}, {g.axis2.name, g.axis2.at(j)}};
      const auto& c = g.cell(i, j);
      for (std::size_t k = 0; k < g.columns.size(); ++k) row[g.columns[k]] = c ? ck::json((*c)[k]) : ck::json(nullptr);
      rows.push_back(row);
    }
  return {{"rows", rows}};
}

int cmd_figure(const Options& opt, int which) {
  ck::figures::FigureGrid grid;
  if (which == 1) {
    if (opt.range_set) throw ck::ParseError("fig1 covers the unit disk; --min/--max are not accepted");
    grid = ck::figures::fig1(opt.steps);
  } else {
    const double lo = opt.range_set ? opt.range_min : (which == 2 ? -2.0 : -1.5);
    const double hi = opt.range_set ? opt.range_max : (which == 2 ? 2.0 : 1.5);
    grid = which == 2 ? ck::figures::fig2(opt.steps, lo, hi) : ck::figures::fig3(opt.steps, lo, hi);
  }
  if (opt.format == "json") {
    emit(opt, grid_to_json(grid).dump(2) + "\n");
  } else {
    std::ostringstream os;
    ck::figures::write_csv(os, grid);
    emit(opt, os.str());
  }
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  ck::harness::SuiteConfig cfg;
  cfg.trials = opt.trials;
  cfg.bloch_trials = 10 * opt.trials;
  cfg.solver = solver_config(opt);
  const auto checks = ck::harness::select_checks(ck::harness::all_checks(cfg), opt.filter);
  if (checks.empty()) throw ck::ParseError("no check id matches filter '" + opt.filter + "'");
  const auto summary = ck::harness::run_checks(checks, opt.seed, [&](const ck::CheckReport& r) {
    if (!opt.quiet) {
      std::fprintf(stderr, "%-36s %s trials=%ld failures=%ld worst_slack=%.3e\n", r.check_id.c_str(),
                   r.pass() ? "PASS" : "FAIL", r.trials, r.failures, r.worst_slack);
    }
  });
  emit(opt, ck::harness::summary_to_json(summary).dump(2) + "\n");
  return summary.pass() ? kExitOk : kExitCheckFailures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherekit: coherence and imaginarity measures, Gaussian coherence, and randomized verification"};
  app.require_subcommand(1);
  Options opt;

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "Solver target duality gap")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", opt.max_iters, "Solver Newton-step budget")->check(CLI::PositiveNumber);
    sub->add_option("--restarts", opt.restarts, "Random restarts for non-convex searches")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "Seed for randomized solver components");
  };
  auto add_output_flags = [&](CLI::App* sub, const char* default_format) {
    sub->add_option("--out", opt.out_path, "Write output to this path instead of stdout");
    sub->add_option("--format", opt.format, std::string("Output format (default ") + default_format + ")")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* measure = app.add_subcommand("measure", "Evaluate a coherence measure on a density-matrix JSON file");
  measure->add_option("state", opt.state_path, "Density-matrix JSON file")->required();
  measure->add_option("-m,--measure", opt.measure, "l1 | relent | tsallis:<a> | robustness | geometric | tracenorm | weight | roofpure:<shannon|oneminusmax>");
  add_solver_flags(measure);
  add_output_flags(measure, "json");

  auto* gap = app.add_subcommand("gap", "C(rho) - C(Re rho) for a density-matrix JSON file");
  gap->add_option("state", opt.state_path, "Density-matrix JSON file")->required();
  gap->add_option("-m,--measure", opt.measure, "Measure selection string");
  add_solver_flags(gap);
  add_output_flags(gap, "json");

  auto* gauss = app.add_subcommand("gaussian-measure", "C_Gr and its real-part gap for a Gaussian-state JSON file");
  gauss->add_option("state", opt.state_path, "Gaussian-state JSON file")->required();
  add_output_flags(gauss, "json");

  CLI::App* figs[3];
  const char* fig_help[3] = {"l1 real-part gap of qubit Bloch states (x, y, 0) over the unit disk",
                             "C_Gr real-part gap of coherent states over (Re alpha, Im alpha)",
                             "C_Gr real-part gap of squeezed vacua over (Re zeta, Im zeta)"};
  for (int k = 0; k < 3; ++k) {
    figs[k] = app.add_subcommand("fig" + std::to_string(k + 1), fig_help[k]);
    figs[k]->add_option("--steps", opt.steps, "Grid points per axis (>= 2)")->check(CLI::Range(2, 100000));
    if (k > 0) {
      figs[k]->add_option("--min", opt.range_min, "Lower bound of both axes");
      figs[k]->add_option("--max", opt.range_max, "Upper bound of both axes");
    }
    add_output_flags(figs[k], "csv");
  }

  auto* verify = app.add_subcommand("verify", "Run the randomized verification suite");
  verify->add_option("--seed", opt.seed, "Master seed");
  verify->add_option("--trials", opt.trials, "Trials per check (>= 1)")->check(CLI::PositiveNumber);
  verify->add_option("--filter", opt.filter, "Run only checks whose id contains this string");
  verify->add_flag("-q,--quiet", opt.quiet, "Suppress per-check progress lines");
  verify->add_option("--out", opt.out_path, "Write the summary JSON to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (int k = 0; k < 3; ++k)
      if (*figs[k]) {
        opt.range_set = k > 0 && figs[k]->count("--min") + figs[k]->count("--max") > 0;
        if (opt.range_set && (figs[k]->count("--min") == 0 || figs[k]->count("--max") == 0)) {
          throw ck::ParseError("--min and --max must be given together");
        }
        return cmd_figure(opt, k + 1);
      }
    if (*measure) return cmd_measure(opt);
    if (*gap) return cmd_gap(opt);
    if (*gauss) return cmd_gaussian_measure(opt);
    if (*verify) return cmd_verify(opt);
  } catch (const ck::InvalidState& e) {
    std::fprintf(stderr, "invalid state: %s\n", e.what());
    return kExitInvalidState;
  } catch (const ck::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ck::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
