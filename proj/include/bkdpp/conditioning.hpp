#pragma once

#include <vector>

#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/report.hpp"

namespace bkdpp {

/// Condition probabilities at or below this are refused.
inline constexpr double kPositivityThreshold = 1e-12;

enum class ConditionKind { Include, Exclude };

/// A projection DPP conditioned on J in phi (with J then removed) or on
/// J in phi^c. The result lives on {1..N} \ J relabeled to 1..N-|J| in
/// increasing order; `labels[k-1]` is the original label of result point k.
struct ConditionedProcess {
  ConditionKind kind;
  PointSet condition;
  int base_points;
  ProjectionDPP result;
  std::vector<int> labels;

  /// Original-label set (disjoint from J) to result labels.
  PointSet to_result(PointSet original) const;
  /// Result-label set to original labels.
  PointSet to_original(PointSet relabeled) const;
};

/// (phi | J in phi) \ J, the projection DPP of the w family of the CS
/// decomposition of (E, R^N_J). Requires |J| < p and P(J in phi) > 1e-12.
ConditionedProcess condition_on_inclusion(const ProjectionDPP& dpp, PointSet j);

/// (phi | J in phi^c), the projection DPP of v u w. Requires |J| <= N - p and
/// P(J in phi^c) > 1e-12.
ConditionedProcess condition_on_exclusion(const ProjectionDPP& dpp, PointSet j);

/// P(J in phi^c) = det(I - K_JJ).
double exclusion_probability(const ProjectionDPP& dpp, PointSet j);

/// Largest absolute difference between the conditioned process's law and the
/// brute-force conditional law of the base process, as an identity report.
CheckReport verify_conditional_law(const ProjectionDPP& base, const ConditionedProcess& cond,
                                   double tolerance = 1e-9);

/// P(K in phi(w)) <= P(K in phi) and P(K in phi) <= P(K in phi(v u w)). Each
/// inequality is reported only when its condition probability is positive
/// (and, for the first, |J| < p).
std::vector<CheckReport> verify_monotonicity(const ProjectionDPP& dpp, PointSet j, PointSet k,
                                             double tolerance = 1e-10);

/// Alternating wedge-sum side of the two-point conditional identity for the
/// ordered points x_1..x_n (squared).
double prop2_wedge_side(const OrthonormalFrame& frame, const std::vector<int>& points);

/// Both sides of the identity: the squared alternating wedge sum against
///   P(x2..xn in phi^c) P(x2..x_{n-1} in phi^c)
///     (P(x1 in phi | x2..xn in phi^c) - P(x1 in phi | x2..x_{n-1} in phi^c)),
/// the right side by brute-force enumeration. An empty conditioning set
/// means no conditioning.
CheckReport verify_prop2_identity(const OrthonormalFrame& frame, const std::vector<int>& points,
                                  double tolerance = 1e-8);

}  // namespace bkdpp
