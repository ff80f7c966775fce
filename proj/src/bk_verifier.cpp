#include "bkdpp/bk_verifier.hpp"

#include <cmath>
#include <string>

#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

std::string describe(const IncreasingEvent& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.generators().size(); ++i) {
    if (i) out += ",";
    out += e.generators()[i].to_string();
  }
  return out + "]";
}

std::string describe_pair(const IncreasingEvent& a, const IncreasingEvent& b) {
  return "A=" + describe(a) + " B=" + describe(b);
}

std::string describe_points(const std::vector<int>& pts) {
  std::string out = "points=";
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? "," : "") + std::to_string(pts[i]);
  return out;
}

CheckReport renamed(CheckReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

// P(x in the process, y not in it for every other y in S1 u S2), summed over x in S.
double single_witness_mass(const ExactLaw& law, PointSet shared, PointSet all) {
  double total = 0.0;
  for (int x : shared.points()) {
    const PointSet others = all.without(x);
    total += law.probability([&](PointSet s) { return s.contains(x) && others.disjoint(s); });
  }
  return total;
}

double complemented_residual(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b) {
  const double p_a = event_probability(law, a);
  const double p_b = event_probability(law, b);
  const double p_union = law.probability([&](PointSet s) { return a.contains(s) || b.contains(s); });
  const double p_inter = law.probability([&](PointSet s) { return a.contains(s) && b.contains(s); });
  const double p_circ = disjoint_occurrence_probability(law, a, b);
  return (1.0 - p_a) * (1.0 - p_b) + p_inter - p_circ - (1.0 - p_union);
}

}  // namespace

double event_probability(const ExactLaw& law, const IncreasingEvent& a) {
  return law.probability([&](PointSet s) { return a.contains(s); });
}

double disjoint_occurrence_probability(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b) {
  return law.probability([&](PointSet s) { return disjoint_occurrence_contains(a, b, s); });
}

ExactLaw law_in_base_labels(const ConditionedProcess& cond) {
  const ExactLaw relabeled = exact_law(cond.result);
  std::vector<LawEntry> entries;
  entries.reserve(relabeled.entries().size());
  // The relabeling is order preserving, so bitmask order survives.
  for (const auto& e : relabeled.entries()) entries.push_back({cond.to_original(e.outcome), e.probability});
  return ExactLaw(cond.base_points, std::move(entries));
}

IncreasingEvent relabel_event(const IncreasingEvent& event, const ConditionedProcess& cond) {
  std::vector<PointSet> gens;
  for (PointSet g : event.generators()) gens.push_back(cond.to_result(g));
  return IncreasingEvent::normalize_generators(cond.result.n_points(), gens);
}

CheckReport check_bk(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b, double tolerance) {
  const double lhs = disjoint_occurrence_probability(law, a, b);
  const double rhs = event_probability(law, a) * event_probability(law, b);
  CheckReport r = inequality_report("bk", lhs, rhs, tolerance, describe_pair(a, b));
  if (!a.singleton_generated() || !b.singleton_generated()) r.note = "outside-hypotheses";
  return r;
}

CheckReport check_bk(const ProjectionDPP& dpp, const IncreasingEvent& a, const IncreasingEvent& b, double tolerance) {
  return check_bk(exact_law(dpp), a, b, tolerance);
}

CheckReport check_equivalence_p2(const ExactLaw& law, const IncreasingEvent& a, const IncreasingEvent& b,
                                 double tolerance) {
  const double p1 = event_probability(law, a) * event_probability(law, b) - disjoint_occurrence_probability(law, a, b);
  return identity_report("bk.complemented_form", p1, complemented_residual(law, a, b), tolerance, describe_pair(a, b));
}

CheckReport check_equivalence_p2(const ProjectionDPP& dpp, const IncreasingEvent& a, const IncreasingEvent& b,
                                 double tolerance) {
  return check_equivalence_p2(exact_law(dpp), a, b, tolerance);
}

CheckReport check_p6_specialization(const ExactLaw& law, const IncreasingEvent& a, double tolerance) {
  const auto& gens = a.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!gens[i].disjoint(gens[j])) throw Error(ErrorCode::DomainError, "generators must be pairwise disjoint");

  const double p_a = event_probability(law, a);
  const double not_a = 1.0 - p_a;
  const double p4 = not_a * not_a + p_a - disjoint_occurrence_probability(law, a, a) - not_a;
  double others = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    others += law.probability([&](PointSet s) {
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (j != i && gens[j].subset_of(s)) return false;
      return true;
    });
  }
  const double n = static_cast<double>(gens.size());
  const double p6 = not_a * not_a + others - (n + 1.0) * not_a;
  return identity_report("bk.self_pair_expanded", p4, p6, tolerance, "A=" + describe(a));
}

CheckReport check_lemma1(const VectorFamily& v, double relative_tolerance) {
  const auto n = v.size();
  const double base = wedge_norm_sq(v);
  const double lhs = wedge_norm_sq(leave_one_out_wedges(v));
  const double rhs = std::pow(base, static_cast<double>(n - 1));
  const double scale = std::max(std::abs(rhs), 1e-300);
  CheckReport r = identity_report("lemma1.dual_wedge_norm", lhs, rhs, relative_tolerance, "n=" + std::to_string(n));
  // Relative comparison: slack is scaled by |rhs|.
  r.slack = -std::abs(lhs - rhs) / scale;
  r.pass = r.slack >= -relative_tolerance || std::abs(lhs - rhs) <= 1e-300;
  r.note = "relative";
  return r;
}

CheckReport check_lemma2(double a, int n, double tolerance) {
  if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorCode::DomainError, "Lemma 2 needs 0 < a <= 1");
  if (n < 1) throw Error(ErrorCode::DomainError, "Lemma 2 needs n > 0");
  const double nn = static_cast<double>(n);
  const double lhs = (nn + 1.0) - a - nn * std::pow(a, -1.0 / nn);
  return inequality_report("lemma2", lhs, 0.0, tolerance, "a=" + std::to_string(a) + " n=" + std::to_string(n));
}

std::vector<CheckReport> check_theorem1(const ProjectionDPP& dpp, PointSet points, double tolerance) {
  const int n = points.size();
  if (n < 2) throw Error(ErrorCode::DomainError, "Theorem 1 needs at least two generating points");
  const ExactLaw law = exact_law(dpp);
  const IncreasingEvent a = IncreasingEvent::from_points(dpp.n_points(), points);
  const std::string witness = "points=" + points.to_string();
  std::vector<CheckReport> out;

  const double p_a = event_probability(law, a);
  out.push_back(inequality_report("theorem1.self_bk", disjoint_occurrence_probability(law, a, a), p_a * p_a, tolerance,
                                  witness));

  if (n > dpp.n_points() - dpp.rank()) {
    out.push_back(identity_report("theorem1.saturated", 1.0 - p_a, 0.0, tolerance, witness));
    return out;
  }
  const double nn = static_cast<double>(n);
  // On phi.
  const double not_a = law.avoids(points);
  double sum_direct = 0.0;
  for (int x : points.points()) sum_direct += law.avoids(points.without(x));
  out.push_back(inequality_report("theorem1.rewritten", (nn + 1.0) * not_a, not_a * not_a + sum_direct, tolerance, witness));
  // On the complement process.
  const ProjectionDPP complement(complement_frame(dpp.frame()));
  const double q = inclusion_probability(complement, points);
  double sum_comp = 0.0;
  for (int x : points.points()) sum_comp += inclusion_probability(complement, points.without(x));
  out.push_back(inequality_report("theorem1.rewritten_complement", (nn + 1.0) * q, q * q + sum_comp, tolerance, witness));
  return out;
}

VectorFamily complement_v_family(const OrthonormalFrame& frame, PointSet j) {
  if (j.size() > frame.n_points() - frame.rank()) throw Error(ErrorCode::TooManyPoints, "need |J| <= N - p");
  const CSDecomposition cs = compute_cs(complement_frame(frame), j);
  const Vector lambda = Eigen::Map<const Vector>(cs.cosines.data(), static_cast<Eigen::Index>(cs.cosines.size()));
  // Row i of u * diag(lambda) is v_i.
  return VectorFamily::from_rows(cs.u.matrix() * lambda.asDiagonal());
}

std::vector<CheckReport> check_chain_B12_to_B15(const OrthonormalFrame& frame, PointSet points, double tolerance) {
  const int n = points.size();
  if (n < 2) throw Error(ErrorCode::DomainError, "the chain needs at least two points");
  if (n > frame.n_points() - frame.rank()) {
    throw Error(ErrorCode::TooManyPoints, "the chain needs |J| <= N - p");
  }
  const std::string witness = "points=" + points.to_string();
  const double nn = static_cast<double>(n);

  const CSDecomposition cs = compute_cs(complement_frame(frame), points);
  double prod_lambda_sq = 1.0;
  for (double c : cs.cosines) prod_lambda_sq *= c * c;
  const VectorFamily v = complement_v_family(frame, points);
  const double w = wedge_norm_sq(v);
  const VectorFamily tilde = leave_one_out_wedges(v);
  std::vector<double> tn(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tn[static_cast<std::size_t>(i)] = tilde[i].squaredNorm();

  const ExactLaw law = exact_law(ProjectionDPP(frame));
  const std::vector<int> pts = points.points();
  const double p_all = law.avoids(points);

  std::vector<CheckReport> out;
  out.push_back(identity_report("chain.avoid_all", p_all, w, tolerance, witness));
  out.push_back(identity_report("chain.avoid_all_cosines", w, prod_lambda_sq, tolerance, witness));
  std::vector<double> p_but(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    p_but[static_cast<std::size_t>(i)] = law.avoids(points.without(pts[static_cast<std::size_t>(i)]));
    out.push_back(identity_report("chain.avoid_all_but[" + std::to_string(pts[static_cast<std::size_t>(i)]) + "]",
                                  p_but[static_cast<std::size_t>(i)], tn[static_cast<std::size_t>(i)], tolerance,
                                  witness));
  }

  double sum_tn = 0.0;
  double geo = 1.0;
  for (double t : tn) {
    sum_tn += t;
    geo *= std::pow(t, 1.0 / nn);
  }
  out.push_back(inequality_report("chain.assembled", (nn + 1.0) * w, w * w + sum_tn, tolerance, witness));

  CheckReport b13 =
      inequality_report("chain.scalar_bound", (nn + 1.0) * w, w * w + nn * std::pow(w, 1.0 - 1.0 / nn), tolerance, witness);
  if (w <= kPositivityThreshold) {
    // a^(-1/n) is undefined at a = 0; the assembled inequality holds trivially with both sides 0.
    b13.note = "degenerate";
    b13.pass = true;
  }
  out.push_back(b13);

  const double wedge_tilde = wedge_norm_sq(tilde);
  out.push_back(identity_report("chain.dual_wedge", std::pow(wedge_tilde, 1.0 / nn), std::pow(w, (nn - 1.0) / nn),
                                tolerance, witness));
  out.push_back(inequality_report("chain.hadamard", std::pow(w, (nn - 1.0) / nn), geo, tolerance, witness));
  out.push_back(inequality_report("chain.am_gm", nn * geo, sum_tn, kScalarTolerance + tolerance, witness));

  double prod_but = 1.0;
  for (double pb : p_but) prod_but *= pb;
  out.push_back(inequality_report("chain.product", std::pow(p_all, nn - 1.0), prod_but, tolerance, witness));

  // Telescoped Lemma 3: P(J)^(n-1) <= P(J-x1)^(n-1) prod_k P(J-xk) / P(J-x1-xk).
  const int x1 = pts.front();
  double ratio = 1.0;
  bool positive = true;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double denom = law.avoids(points.without(x1).without(pts[k]));
    if (denom <= kPositivityThreshold) {
      positive = false;
      break;
    }
    ratio *= p_but[k] / denom;
  }
  if (positive) {
    out.push_back(inequality_report("chain.telescoped", std::pow(p_all, nn - 1.0), std::pow(p_but[0], nn - 1.0) * ratio,
                                    tolerance, witness));
  }
  return out;
}

CheckReport check_lemma3(const ProjectionDPP& dpp, const std::vector<int>& points, int k, double tolerance) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw Error(ErrorCode::DomainError, "Lemma 3 needs at least two points");
  if (k < 2 || k > n) throw Error(ErrorCode::DomainError, "k must be a position in 2..n");
  const PointSet all = PointSet::of(points);
  if (all.size() != n) throw Error(ErrorCode::DomainError, "points must be distinct");
  const int x1 = points.front();
  const int xk = points[static_cast<std::size_t>(k - 1)];
  const ExactLaw law = exact_law(dpp);
  const PointSet rest = all.without(x1);     // j = 2..n
  const PointSet rest_k = rest.without(xk);  // j != 1, k
  const double d1 = law.avoids(rest);
  const double d2 = law.avoids(rest_k);
  if (d1 <= kPositivityThreshold || d2 <= kPositivityThreshold) {
    throw Error(ErrorCode::ZeroProbabilityCondition, "conditioning event has probability 0");
  }
  const double lhs = law.avoids(all) / d1;
  const double rhs = law.avoids(all.without(xk)) / d2;
  return inequality_report("lemma3.conditional_avoidance", lhs, rhs, tolerance, describe_points(points) + " k=" + std::to_string(k));
}

Lemma4Context::Lemma4Context(const ProjectionDPP& dpp, int x0_)
    : x0(x0_),
      law(exact_law(dpp)),
      conditioned(condition_on_exclusion(dpp, PointSet{}.with(x0_))),
      conditioned_law(exact_law(conditioned.result)),
      conditioned_law_in_base(law_in_base_labels(conditioned)) {}

std::vector<CheckReport> check_lemma4_step(const Lemma4Context& ctx, const IncreasingEvent& a,
                                           const IncreasingEvent& b, double tolerance) {
  if (!a.singleton_generated() || !b.singleton_generated()) {
    throw Error(ErrorCode::DomainError, "the Lemma 4 step needs singleton-generated events");
  }
  if (a.support().contains(ctx.x0) || b.support().contains(ctx.x0)) {
    throw Error(ErrorCode::PointAlreadyGenerating, "x0 must avoid the generators of A and B");
  }
  const std::string witness = describe_pair(a, b) + " x0=" + std::to_string(ctx.x0);
  const PointSet s1 = a.support();
  const PointSet s2 = b.support();
  const PointSet shared = s1 & s2;
  const PointSet all = s1 | s2;
  const ExactLaw& l0 = ctx.conditioned_law_in_base;
  const ExactLaw& l = ctx.law;
  std::vector<CheckReport> out;

  // Induction hypothesis instance on conditioned.
  const IncreasingEvent a0 = relabel_event(a, ctx.conditioned);
  const IncreasingEvent b0 = relabel_event(b, ctx.conditioned);
  const CheckReport bk_conditioned = renamed(check_bk(ctx.conditioned_law, a0, b0, tolerance), "lemma4.bk_on_conditioned");
  out.push_back(bk_conditioned);

  const double avoid_all_0 = l0.avoids(all);
  const double avoid_s1_0 = l0.avoids(s1);
  const double avoid_s2_0 = l0.avoids(s2);
  const double avoid_s2 = l.avoids(s2);
  const double witness_mass_0 = single_witness_mass(l0, shared, all);

  const CheckReport complemented_conditioned =
      inequality_report("lemma4.complemented_on_conditioned", avoid_all_0, avoid_s1_0 * avoid_s2_0 + witness_mass_0, tolerance, witness);
  out.push_back(complemented_conditioned);
  out.push_back(identity_report("lemma4.conditioned_forms_agree", bk_conditioned.slack, complemented_conditioned.slack, tolerance, witness));
  out.push_back(inequality_report("lemma4.monotonicity_bridge", avoid_s2_0, avoid_s2, tolerance, witness));
  const CheckReport target =
      inequality_report("lemma4.target_rewritten", avoid_all_0, avoid_s1_0 * avoid_s2 + witness_mass_0, tolerance, witness);
  out.push_back(target);

  const IncreasingEvent a_ext = extend_by_point(a, ctx.x0);
  const double p_x0_out = l.avoids(PointSet{}.with(ctx.x0));
  out.push_back(identity_report("lemma4.target_scaling", complemented_residual(l, a_ext, b), p_x0_out * target.slack, tolerance,
                                witness));
  out.push_back(renamed(check_bk(l, a_ext, b, tolerance), "lemma4.bk_extended"));
  return out;
}

std::vector<CheckReport> check_lemma4_step(const ProjectionDPP& dpp, const IncreasingEvent& a,
                                           const IncreasingEvent& b, int x0, double tolerance) {
  if (a.support().contains(x0) || b.support().contains(x0)) {
    throw Error(ErrorCode::PointAlreadyGenerating, "x0 must avoid the generators of A and B");
  }
  return check_lemma4_step(Lemma4Context(dpp, x0), a, b, tolerance);
}

std::vector<CheckReport> check_theorem2(const ExactLaw& law, PointSet a_points, PointSet b_points, double tolerance) {
  const int n = law.n_points();
  const IncreasingEvent a = IncreasingEvent::from_points(n, a_points);
  const IncreasingEvent b = IncreasingEvent::from_points(n, b_points);
  std::vector<CheckReport> out;
  out.push_back(renamed(check_bk(law, a, b, tolerance), "theorem2.bk"));
  out.push_back(renamed(check_equivalence_p2(law, a, b, tolerance), "theorem2.complemented_form"));
  if (a_points.disjoint(b_points) && !a.vacuous() && !b.vacuous()) {
    const std::string witness = describe_pair(a, b);
    const double not_union = law.avoids(a_points | b_points);
    out.push_back(
        inequality_report("theorem2.negative_association", not_union, law.avoids(a_points) * law.avoids(b_points), tolerance, witness));
    const double gap = law.probability([&](PointSet s) {
      return a.contains(s) && b.contains(s) && !disjoint_occurrence_contains(a, b, s);
    });
    out.push_back(identity_report("theorem2.negative_association_gap", gap, 0.0, tolerance, witness));
  }
  return out;
}

std::vector<CheckReport> check_theorem2(const ProjectionDPP& dpp, PointSet a_points, PointSet b_points,
                                        double tolerance) {
  return check_theorem2(exact_law(dpp), a_points, b_points, tolerance);
}

}  // namespace bkdpp
