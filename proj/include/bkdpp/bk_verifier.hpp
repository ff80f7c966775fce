#pragma once

#include <map>
#include <string>
#include <vector>

#include "bkdpp/conditioning.hpp"
#include "bkdpp/exterior_algebra.hpp"
#include "bkdpp/increasing_events.hpp"
#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/report.hpp"

namespace bkdpp {

/// Absolute tolerance for probability inequalities and identities.
inline constexpr double kProbabilityTolerance = 1e-10;
/// Tolerance for pure scalar inequalities (Lemma 2, AM-GM).
inline constexpr double kScalarTolerance = 1e-12;

/// P(phi in A), P(phi in A o B) and friends over a precomputed law.
double event_probability(const ExactLaw& law, const IncreasingEvent& a);
double disjoint_occurrence_probability(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b);

/// Law of a conditioned process with outcomes written in the base labels.
ExactLaw law_in_base_labels(const ConditionedProcess& cond);

/// Moves an event on the base ground set onto a conditioned process's
/// relabeled ground set. Generators must avoid the conditioning set.
IncreasingEvent relabel_event(const IncreasingEvent& event, const ConditionedProcess& cond);

/// BK: P(phi in A o B) <= P(phi in A) P(phi in B). Events that are not
/// singleton-generated are still evaluated but flagged "outside-hypotheses".
CheckReport check_bk(const ProjectionDPP& dpp, const IncreasingEvent& a, const IncreasingEvent& b,
                     double tolerance = kProbabilityTolerance);
CheckReport check_bk(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b,
                     double tolerance = kProbabilityTolerance);

/// residual of the BK inequality, P(A)P(B) - P(A o B), and of its
/// complemented form
///   P(not A)P(not B) + P(A and B) - P(A o B) - P(not (A or B)),
/// compared as an identity.
CheckReport check_equivalence_p2(const ProjectionDPP& dpp, const IncreasingEvent& a, const IncreasingEvent& b,
                                 double tolerance = kProbabilityTolerance);
CheckReport check_equivalence_p2(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b,
                                 double tolerance = kProbabilityTolerance);

/// For A with pairwise disjoint generators A_1..A_n: the A = B form
///   P(not A) <= P(not A)^2 + P(A) - P(A o A)
/// against its expanded form
///   (n+1) P(not A) <= P(not A)^2 + sum_i P(A_j not in phi for all j != i),
/// compared through their residuals. Throws DomainError if generators overlap.
CheckReport check_p6_specialization(const ExactLaw& law, const IncreasingEvent& a,
                                    double tolerance = kProbabilityTolerance);

/// ||wedge v~_i|| = ||wedge v_i||^(n-1), checked on squares with relative tolerance.
CheckReport check_lemma1(const VectorFamily& v, double relative_tolerance = 1e-9);

/// (n+1) - a - n a^(-1/n) <= 0 for 0 < a <= 1. Throws DomainError otherwise.
CheckReport check_lemma2(double a, int n, double tolerance = kScalarTolerance);

/// P(phi in A o A) <= P(phi in A)^2 for A generated by the given points
/// (|points| >= 2), plus the same statement rewritten on phi and on the
/// complement process when |points| <= N - p. For larger point sets the
/// event is certain and that is checked instead.
std::vector<CheckReport> check_theorem1(const ProjectionDPP& dpp, PointSet points,
                                        double tolerance = kProbabilityTolerance);

/// v_i = (lambda_1 u_i^1, ..., lambda_n u_i^n) from the CS decomposition of
/// (E^perp, R^N_J), lambda_i the cosines; needs |J| <= N - p.
VectorFamily complement_v_family(const OrthonormalFrame& frame, PointSet j);

/// Every link of the proof chain for 2 <= |points| <= N - p, built from the
/// CS decomposition of (E^perp, R^N_J): the probability identities for the
/// v-family and its leave-one-out wedges, then the assembled inequality,
/// the Lemma 2 bound, Hadamard, AM-GM, the product inequality and its
/// telescoped Lemma 3 form.
std::vector<CheckReport> check_chain_B12_to_B15(const OrthonormalFrame& frame, PointSet points,
                                                double tolerance = kProbabilityTolerance);

/// P(x1 in phi^c | x_j in phi^c, j = 2..n) <= P(x1 in phi^c | x_j in phi^c, j != 1, k)
/// for `points` = x_1..x_n in order and k in 2..n (1-based position).
CheckReport check_lemma3(const ProjectionDPP& dpp, const std::vector<int>& points, int k,
                         double tolerance = kProbabilityTolerance);

/// Precomputed pieces for Lemma 4 steps sharing one (process, x0).
struct Lemma4Context {
  Lemma4Context(const ProjectionDPP& dpp, int x0);

  int x0;
  ExactLaw law;
  ConditionedProcess conditioned;
  ExactLaw conditioned_law;           ///< relabeled ground set
  ExactLaw conditioned_law_in_base;   ///< outcomes in base labels
};

/// The induction step extending A by a fresh point x0: BK for (A, B) on
/// conditioned = (phi | x0 not in phi), its complemented form, the monotonicity
/// bridge, the rewritten target inequality and finally BK for (A + x0, B)
/// on phi. A and B must be singleton-generated and avoid x0.
std::vector<CheckReport> check_lemma4_step(const ProjectionDPP& dpp, const IncreasingEvent& a,
                                           const IncreasingEvent& b, int x0,
                                           double tolerance = kProbabilityTolerance);
std::vector<CheckReport> check_lemma4_step(const Lemma4Context& ctx, const IncreasingEvent& a,
                                           const IncreasingEvent& b, double tolerance = kProbabilityTolerance);

/// BK for the events generated by two point sets (which may overlap), the
/// complemented-form identity and, for disjoint point sets, the reduction to
/// negative association.
std::vector<CheckReport> check_theorem2(const ProjectionDPP& dpp, PointSet a_points, PointSet b_points,
                                        double tolerance = kProbabilityTolerance);
std::vector<CheckReport> check_theorem2(const ExactLaw& law, PointSet a_points, PointSet b_points,
                                        double tolerance = kProbabilityTolerance);

}  // namespace bkdpp
