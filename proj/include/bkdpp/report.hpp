#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace bkdpp {

/// Outcome of one inequality or identity check. For "lhs <= rhs" checks the
/// slack is rhs - lhs; for identities it is -|lhs - rhs|. pass <=> slack >= -tolerance.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  /// Instance description (frame seed, point sets, ...).
  std::string witness;
  /// Flags such as "degenerate" or "outside-hypotheses".
  std::string note;

  double diff() const { return std::abs(lhs - rhs); }
};

inline CheckReport inequality_report(std::string name, double lhs, double rhs, double tolerance,
                                     std::string witness = {}) {
  CheckReport r{std::move(name), lhs, rhs, rhs - lhs, tolerance, false, std::move(witness), {}};
  r.pass = r.slack >= -tolerance;
  return r;
}

inline CheckReport identity_report(std::string name, double lhs, double rhs, double tolerance,
                                   std::string witness = {}) {
  CheckReport r{std::move(name), lhs, rhs, -std::abs(lhs - rhs), tolerance, false, std::move(witness), {}};
  r.pass = r.slack >= -tolerance;
  return r;
}

inline bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

}  // namespace bkdpp
