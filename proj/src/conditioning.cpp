#include "bkdpp/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

std::vector<int> remaining_labels(int n_points, PointSet j) { return j.complement(n_points).points(); }

ConditionedProcess identity_condition(const ProjectionDPP& dpp, ConditionKind kind) {
  return {kind, PointSet{}, dpp.n_points(), dpp, PointSet::full(dpp.n_points()).points()};
}

}  // namespace

PointSet ConditionedProcess::to_result(PointSet original) const {
  if (!original.disjoint(condition)) {
    throw Error(ErrorCode::OverlappingSets, original.to_string() + " meets the conditioning set " + condition.to_string());
  }
  PointSet out;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (original.contains(labels[k])) out = out.with(static_cast<int>(k) + 1);
  }
  if (out.size() != original.size()) {
    throw Error(ErrorCode::PointOutOfRange, original.to_string() + " is outside the base ground set");
  }
  return out;
}

PointSet ConditionedProcess::to_original(PointSet relabeled) const {
  PointSet out;
  for (int k : relabeled.points()) out = out.with(labels[static_cast<std::size_t>(k - 1)]);
  return out;
}

double exclusion_probability(const ProjectionDPP& dpp, PointSet j) {
  if (j.empty()) return 1.0;
  const Matrix rows = dpp.frame().rows(j);
  const Matrix m = Matrix::Identity(rows.rows(), rows.rows()) - rows * rows.transpose();
  return std::max(0.0, determinant(m));
}

ConditionedProcess condition_on_inclusion(const ProjectionDPP& dpp, PointSet j) {
  const int n = j.size();
  if (n >= dpp.rank()) {
    throw Error(ErrorCode::TooManyPoints, "conditioning on J in phi needs |J| < p (|J|=" + std::to_string(n) +
                                              ", p=" + std::to_string(dpp.rank()) + ")");
  }
  if (n == 0) return identity_condition(dpp, ConditionKind::Include);
  const double prob = inclusion_probability(dpp, j);
  if (prob <= kPositivityThreshold) {
    throw Error(ErrorCode::ZeroProbabilityCondition, "P(" + j.to_string() + " in phi) = " + std::to_string(prob));
  }
  const CSDecomposition cs = compute_cs(dpp.frame(), j);
  return {ConditionKind::Include, j, dpp.n_points(), ProjectionDPP(OrthonormalFrame(cs.w.matrix())),
          remaining_labels(dpp.n_points(), j)};
}

ConditionedProcess condition_on_exclusion(const ProjectionDPP& dpp, PointSet j) {
  const int n = j.size();
  const int big_n = dpp.n_points();
  const int p = dpp.rank();
  if (n > big_n - p) {
    throw Error(ErrorCode::TooManyPoints, "conditioning on J in phi^c needs |J| <= N - p (|J|=" + std::to_string(n) +
                                              ", N-p=" + std::to_string(big_n - p) + ")");
  }
  if (n == 0) return identity_condition(dpp, ConditionKind::Exclude);
  const double prob = exclusion_probability(dpp, j);
  if (prob <= kPositivityThreshold) {
    throw Error(ErrorCode::ZeroProbabilityCondition, "P(" + j.to_string() + " in phi^c) = " + std::to_string(prob));
  }
  Matrix family;
  if (n <= p) {
    const CSDecomposition cs = compute_cs(dpp.frame(), j);
    family = cs.v.concat(cs.w).matrix();
  } else {
    // No CS decomposition with |J| > p; span(v u w) is the projection of E
    // onto the coordinates off J.
    family = orthonormalize(VectorFamily(dpp.frame().rows(j.complement(big_n)))).matrix();
  }
  return {ConditionKind::Exclude, j, big_n, ProjectionDPP(OrthonormalFrame(std::move(family))),
          remaining_labels(big_n, j)};
}

CheckReport verify_conditional_law(const ProjectionDPP& base, const ConditionedProcess& cond, double tolerance) {
  const ExactLaw base_law = exact_law(base);
  const PointSet j = cond.condition;
  const bool include = cond.kind == ConditionKind::Include;
  const double denom = include ? base_law.includes(j) : base_law.avoids(j);

  // Keys are result outcomes expressed in original labels.
  std::map<std::uint64_t, std::pair<double, double>> table;
  for (const auto& e : base_law.entries()) {
    if (include ? !j.subset_of(e.outcome) : !j.disjoint(e.outcome)) continue;
    table[e.outcome.minus(j).bits()].first += e.probability / denom;
  }
  const ExactLaw cond_law = exact_law(cond.result);
  for (const auto& e : cond_law.entries()) {
    table[cond.to_original(e.outcome).bits()].second += e.probability;
  }
  double worst = 0.0;
  for (const auto& [key, probs] : table) worst = std::max(worst, std::abs(probs.first - probs.second));
  return identity_report(include ? "conditional_law.include" : "conditional_law.exclude", worst, 0.0, tolerance,
                         "J=" + j.to_string());
}

std::vector<CheckReport> verify_monotonicity(const ProjectionDPP& dpp, PointSet j, PointSet k, double tolerance) {
  if (!j.disjoint(k)) {
    throw Error(ErrorCode::OverlappingSets, "K = " + k.to_string() + " meets J = " + j.to_string());
  }
  const std::string witness = "J=" + j.to_string() + " K=" + k.to_string();
  const double base = inclusion_probability(dpp, k);
  std::vector<CheckReport> out;
  if (j.size() < dpp.rank() && inclusion_probability(dpp, j) > kPositivityThreshold) {
    const ConditionedProcess c = condition_on_inclusion(dpp, j);
    out.push_back(inequality_report("monotonicity.include", inclusion_probability(c.result, c.to_result(k)), base,
                                    tolerance, witness));
  }
  if (j.size() <= dpp.n_points() - dpp.rank() && exclusion_probability(dpp, j) > kPositivityThreshold) {
    const ConditionedProcess c = condition_on_exclusion(dpp, j);
    out.push_back(inequality_report("monotonicity.exclude", base, inclusion_probability(c.result, c.to_result(k)),
                                    tolerance, witness));
  }
  return out;
}

double prop2_wedge_side(const OrthonormalFrame& frame, const std::vector<int>& points) {
  const std::size_t n = points.size();
  const Vector first = frame.row(points.front());
  const Vector last = frame.row(points.back());
  double total = first.dot(last);
  const std::size_t middle = n - 2;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << middle); ++mask) {
    VectorFamily a(first.size());
    VectorFamily b(first.size());
    a.push_back(first);
    b.push_back(last);
    for (std::size_t t = 0; t < middle; ++t) {
      if ((mask >> t) & 1U) {
        const Vector z = frame.row(points[t + 1]);
        a.push_back(z);
        b.push_back(z);
      }
    }
    const double sign = (std::popcount(mask) % 2 == 0) ? 1.0 : -1.0;
    total += sign * wedge_inner(a, b);
  }
  return total * total;
}

CheckReport verify_prop2_identity(const OrthonormalFrame& frame, const std::vector<int>& points, double tolerance) {
  const std::size_t n = points.size();
  if (n < 2) throw Error(ErrorCode::DomainError, "the identity needs at least two points");
  const PointSet all = PointSet::of(points);
  if (static_cast<std::size_t>(all.size()) != n) throw Error(ErrorCode::DomainError, "points must be distinct");
  if (all.max_point() > frame.n_points()) throw Error(ErrorCode::PointOutOfRange, "point outside the ground set");

  const ExactLaw law = exact_law(ProjectionDPP(frame));
  const PointSet first = PointSet{}.with(points.front());
  const PointSet tail = all.minus(first);                              // x2..xn
  const PointSet middle = tail.without(points.back());                 // x2..x_{n-1}
  const double p_tail = law.avoids(tail);
  const double p_middle = law.avoids(middle);
  if (p_tail <= kPositivityThreshold) {
    throw Error(ErrorCode::ZeroProbabilityCondition, "P(" + tail.to_string() + " in phi^c) = " + std::to_string(p_tail));
  }
  auto joint = [&](PointSet excluded) {
    return law.probability([&](PointSet s) { return first.subset_of(s) && excluded.disjoint(s); });
  };
  const double cond_tail = joint(tail) / p_tail;
  const double cond_middle = joint(middle) / p_middle;
  const double rhs = p_tail * p_middle * (cond_tail - cond_middle);

  std::string witness = "points=";
  for (std::size_t i = 0; i < n; ++i) witness += (i ? "," : "") + std::to_string(points[i]);
  return identity_report("prop2.wedge_identity", prop2_wedge_side(frame, points), rhs, tolerance, witness);
}

}  // namespace bkdpp
