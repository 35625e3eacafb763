#pragma once

// JSON ingestion/emission for density matrices, Kraus channels, Gaussian
// states and channels, plus the measure-selection registry used by the CLI
// and the verification harness.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coherekit/core.hpp"
#include "coherekit/gaussian.hpp"
#include "coherekit/measures.hpp"
#include "coherekit/measures_opt.hpp"
#include "coherekit/qstate.hpp"
#include "coherekit/solver.hpp"

namespace coherekit {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Measure registry.

enum class MeasureKind { l1, relent, tsallis, robustness, geometric, trace_norm, weight, roof_pure };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::l1;
  double alpha = 0.0;                     ///< tsallis only
  ConcaveFn roof = ConcaveFn::shannon;    ///< roof_pure only

  bool optimization_based() const {
    return kind == MeasureKind::robustness || kind == MeasureKind::geometric || kind == MeasureKind::trace_norm ||
           kind == MeasureKind::weight;
  }
  /// Tolerance attached to checks on this measure.
  double tolerance() const { return optimization_based() ? tol::optimization : tol::closed_form; }
};

inline std::string to_string(const MeasureSpec& m) {
  switch (m.kind) {
    case MeasureKind::l1: return "l1";
    case MeasureKind::relent: return "relent";
    case MeasureKind::tsallis: {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os << "tsallis:" << m.alpha;
      return os.str();
    }
    case MeasureKind::robustness: return "robustness";
    case MeasureKind::geometric: return "geometric";
    case MeasureKind::trace_norm: return "tracenorm";
    case MeasureKind::weight: return "weight";
    case MeasureKind::roof_pure: return "roofpure:" + to_string(m.roof);
  }
  return "?";
}

inline double parse_real(const std::string& text, const std::string& what) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0.0;
  is >> v;
  if (is.fail() || !is.eof() || !std::isfinite(v)) throw ParseError("cannot parse " + what + " '" + text + "' as a finite real");
  return v;
}

/// "l1", "relent", "tsallis:<alpha>", "robustness", "geometric", "tracenorm", "weight", "roofpure:<f-id>".
inline MeasureSpec parse_measure(const std::string& s) {
  MeasureSpec m;
  if (s == "l1") m.kind = MeasureKind::l1;
  else if (s == "relent") m.kind = MeasureKind::relent;
  else if (s == "robustness") m.kind = MeasureKind::robustness;
  else if (s == "geometric") m.kind = MeasureKind::geometric;
  else if (s == "tracenorm") m.kind = MeasureKind::trace_norm;
  else if (s == "weight") m.kind = MeasureKind::weight;
  else if (s.rfind("tsallis:", 0) == 0) {
    m.kind = MeasureKind::tsallis;
    m.alpha = parse_real(s.substr(8), "tsallis alpha");
    if (!tsallis_alpha_valid(m.alpha)) throw ParseError("tsallis alpha must lie in [0,1) u (1,2], got '" + s.substr(8) + "'");
  } else if (s.rfind("roofpure:", 0) == 0) {
    m.kind = MeasureKind::roof_pure;
    m.roof = parse_concave_fn(s.substr(9));
  } else {
    throw ParseError("unknown measure '" + s +
                     "' (expected l1, relent, tsallis:<alpha>, robustness, geometric, tracenorm, weight, roofpure:<f-id>)");
  }
  return m;
}

/// Evaluates a measure. roofpure on a mixed state returns the convex-roof upper bound, flagged.
inline MeasureResult evaluate_measure(const MeasureSpec& m, const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  MeasureResult r;
  r.feasibility = 0.0;
  switch (m.kind) {
    case MeasureKind::l1: r.value = c_l1(rho); return r;
    case MeasureKind::relent: r.value = c_rel_ent(rho); return r;
    case MeasureKind::tsallis: r.value = c_tsallis(rho, m.alpha); return r;
    case MeasureKind::robustness: return c_robustness(rho, cfg);
    case MeasureKind::geometric: return c_geometric(rho, cfg);
    case MeasureKind::trace_norm: return c_trace_norm(rho, cfg);
    case MeasureKind::weight: return c_weight(rho, cfg);
    case MeasureKind::roof_pure: return c_convex_roof_upper(rho, m.roof, cfg);
  }
  return r;
}

inline double measure_value(const MeasureSpec& m, const DensityMatrix& rho, const SolverConfig& cfg = {}) {
  return evaluate_measure(m, rho, cfg).value;
}

// ---------------------------------------------------------------------------
// JSON helpers.

namespace io_detail {

inline const json& require(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(what + ": missing field '" + key + "'");
  return j.at(key);
}

inline double finite_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError(what + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(what + ": NaN/Inf not allowed");
  return x;
}

inline long positive_int(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long>() < 1) throw ParseError(what + ": expected a positive integer");
  return v.get<long>();
}

inline RMatrix real_matrix(const json& v, long rows, long cols, const std::string& what) {
  if (!v.is_array() || static_cast<long>(v.size()) != rows) {
    throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  }
  RMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols) {
      throw ParseError(what + ": row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    }
    for (long k = 0; k < cols; ++k) m(i, k) = finite_number(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

inline RVector real_vector(const json& v, long n, const std::string& what) {
  if (!v.is_array() || static_cast<long>(v.size()) != n) {
    throw ParseError(what + ": expected " + std::to_string(n) + " entries");
  }
  RVector out(n);
  for (long i = 0; i < n; ++i) out(i) = finite_number(v[static_cast<std::size_t>(i)], what);
  return out;
}

inline CMatrix complex_matrix(const json& j, long d, const std::string& what) {
  const RMatrix re = real_matrix(require(j, "re", what), d, d, what + ".re");
  const RMatrix im = j.contains("im") ? real_matrix(j.at("im"), d, d, what + ".im") : RMatrix::Zero(d, d);
  CMatrix m(d, d);
  m.real() = re;
  m.imag() = im;
  return m;
}

inline json to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace io_detail

/// Parses JSON text; non-standard tokens (NaN, Infinity) are rejected by the parser itself.
inline json parse_json_text(const std::string& text, const std::string& what = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": malformed JSON (" + e.what() + ")");
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// {"dim": d, "re": [[...]], "im": [[...]]}; "im" may be omitted for real states.
inline DensityMatrix density_from_json(const json& j) {
  const long d = io_detail::positive_int(io_detail::require(j, "dim", "density matrix"), "density matrix dim");
  return DensityMatrix(io_detail::complex_matrix(j, d, "density matrix"));
}

inline json density_to_json(const DensityMatrix& rho) {
  return {{"dim", rho.dim()},
          {"re", io_detail::to_json(RMatrix(rho.matrix().real()))},
          {"im", io_detail::to_json(RMatrix(rho.matrix().imag()))}};
}

/// {"dim": d, "kind": "channel"|"operation", "kraus": [{"re": ..., "im": ...}, ...]}.
inline KrausChannel kraus_from_json(const json& j) {
  const long d = io_detail::positive_int(io_detail::require(j, "dim", "kraus"), "kraus dim");
  KrausKind kind = KrausKind::channel;
  if (j.contains("kind")) {
    const json& k = j.at("kind");
    if (!k.is_string()) throw ParseError("kraus kind: expected a string");
    if (k == "channel") kind = KrausKind::channel;
    else if (k == "operation") kind = KrausKind::operation;
    else throw ParseError("kraus kind must be 'channel' or 'operation'");
  }
  const json& list = io_detail::require(j, "kraus", "kraus");
  if (!list.is_array() || list.empty()) throw ParseError("kraus: expected a non-empty list of operators");
  std::vector<CMatrix> ops;
  for (std::size_t m = 0; m < list.size(); ++m) ops.push_back(io_detail::complex_matrix(list[m], d, "kraus[" + std::to_string(m) + "]"));
  return KrausChannel(std::move(ops), kind);
}

inline json kraus_to_json(const KrausChannel& phi) {
  json ops = json::array();
  for (const auto& k : phi.kraus()) {
    ops.push_back({{"re", io_detail::to_json(RMatrix(k.real()))}, {"im", io_detail::to_json(RMatrix(k.imag()))}});
  }
  return {{"dim", phi.dim()}, {"kind", phi.kind() == KrausKind::channel ? "channel" : "operation"}, {"kraus", ops}};
}

/// {"modes": n, "mean": [2n], "cov": [[2n x 2n]]}, quadratures ordered (q1, p1, ..., qn, pn).
inline gaussian::GaussianState gaussian_state_from_json(const json& j) {
  const long n = io_detail::positive_int(io_detail::require(j, "modes", "gaussian state"), "gaussian state modes");
  RVector mean = io_detail::real_vector(io_detail::require(j, "mean", "gaussian state"), 2 * n, "gaussian state mean");
  RMatrix cov = io_detail::real_matrix(io_detail::require(j, "cov", "gaussian state"), 2 * n, 2 * n, "gaussian state cov");
  return gaussian::GaussianState(mean, cov);
}

inline json gaussian_state_to_json(const gaussian::GaussianState& s) {
  return {{"modes", s.modes()}, {"mean", io_detail::to_json(s.mean())}, {"cov", io_detail::to_json(s.cov())}};
}

/// {"modes": n, "b": [2n], "T": [[...]], "N": [[...]]}.
inline gaussian::GaussianChannel gaussian_channel_from_json(const json& j) {
  const long n = io_detail::positive_int(io_detail::require(j, "modes", "gaussian channel"), "gaussian channel modes");
  RVector b = io_detail::real_vector(io_detail::require(j, "b", "gaussian channel"), 2 * n, "gaussian channel b");
  RMatrix t = io_detail::real_matrix(io_detail::require(j, "T", "gaussian channel"), 2 * n, 2 * n, "gaussian channel T");
  RMatrix nn = io_detail::real_matrix(io_detail::require(j, "N", "gaussian channel"), 2 * n, 2 * n, "gaussian channel N");
  return gaussian::GaussianChannel(b, t, nn);
}

inline json gaussian_channel_to_json(const gaussian::GaussianChannel& c) {
  return {{"modes", c.modes()},
          {"b", io_detail::to_json(c.b())},
          {"T", io_detail::to_json(c.t())},
          {"N", io_detail::to_json(c.n())}};
}

inline json measure_result_to_json(const MeasureSpec& m, const MeasureResult& r) {
  json out = {{"measure", to_string(m)}, {"value", r.value}};
  if (r.certificate.size() > 0) out["certificate"] = io_detail::to_json(r.certificate);
  if (m.optimization_based()) {
    out["feasibility"] = r.feasibility;
    out["iterations"] = r.iterations;
    out["converged"] = r.converged;
  }
  out["flagged_upper_bound"] = r.flagged_upper_bound;
  return out;
}

inline json report_to_json(const CheckReport& r) {
  return {{"check_id", r.check_id},
          {"seed", r.seed},
          {"trials", r.trials},
          {"failures", r.failures},
          {"worst_slack", r.worst_slack},
          {"tolerance", r.tolerance},
          {"instance_digest", r.instance_digest}};
}

}  // namespace coherekit
