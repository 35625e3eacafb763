#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>

#include "coherekit/core.hpp"
#include "coherekit/random.hpp"

namespace coherekit {

/// Outcome of one randomized check.
///
/// slack is the margin by which a trial satisfies its inequality (negative
/// means violated). failures counts trials with slack < -tolerance;
/// worst_slack is the most negative slack observed, recorded as measured.
struct CheckReport {
  std::string check_id;
  std::uint64_t seed = 0;
  long trials = 0;
  long failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double tolerance = 0.0;
  std::string instance_digest;  ///< "t<trial>:<fnv1a-64 hex>" of the worst instance

  bool pass() const { return failures == 0; }

  /// Records one trial; `serialized` is the instance text the digest is taken over.
  void record(long trial, double slack, const std::string& serialized) {
    ++trials;
    if (slack < -tolerance) ++failures;
    if (slack < worst_slack || instance_digest.empty()) {
      worst_slack = std::min(worst_slack, slack);
      instance_digest = make_digest(trial, serialized);
    }
  }

  static std::string make_digest(long trial, const std::string& serialized) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "t%ld:%016llx", trial, static_cast<unsigned long long>(fnv1a(serialized)));
    return buf;
  }
};

/// Round-trip exact text form of a real matrix, used for instance digests.
inline std::string serialize_exact(const RMatrix& m) {
  std::string out = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,", m(i, j));
      out += buf;
    }
  return out;
}

inline std::string serialize_exact(const CMatrix& m) {
  return serialize_exact(RMatrix(m.real())) + "|" + serialize_exact(RMatrix(m.imag()));
}

}  // namespace coherekit
