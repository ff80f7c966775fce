#include "bkdpp/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bkdpp/conditioning.hpp"
#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"
#include "bkdpp/random.hpp"

namespace bkdpp {

namespace {

// Exhaustive pair sweeps grow as 4^N; beyond this size pass explicit points.
constexpr int kMaxPairSweepPoints = 8;

using Reports = std::vector<CheckReport>;

void append(Reports& out, const Reports& more) { out.insert(out.end(), more.begin(), more.end()); }

void bump(int* skipped) {
  if (skipped) ++*skipped;
}

PointSet as_set(const std::vector<int>& pts) {
  const PointSet s = PointSet::of(pts);
  if (s.size() != static_cast<int>(pts.size())) throw Error(ErrorCode::DomainError, "points must be distinct");
  return s;
}

void require_in_ground(PointSet s, int n) {
  if (s.max_point() > n) {
    throw Error(ErrorCode::PointOutOfRange, "point " + std::to_string(s.max_point()) + " exceeds N = " + std::to_string(n));
  }
}

// ---- per-instance checks -------------------------------------------------

void prop1_instance(const ProjectionDPP& dpp, PointSet j, const Tolerances& tol, Reports& out, int* skipped) {
  append(out, verify_prop1_probabilities(dpp.frame(), j, tol.prop1));
  const int n = j.size();
  if (n < dpp.rank()) {
    if (inclusion_probability(dpp, j) > kPositivityThreshold) {
      out.push_back(verify_conditional_law(dpp, condition_on_inclusion(dpp, j), tol.conditional_law));
    } else {
      bump(skipped);
    }
  }
  if (n <= dpp.n_points() - dpp.rank()) {
    if (exclusion_probability(dpp, j) > kPositivityThreshold) {
      out.push_back(verify_conditional_law(dpp, condition_on_exclusion(dpp, j), tol.conditional_law));
    } else {
      bump(skipped);
    }
  }
}

void prop2_instance(const OrthonormalFrame& frame, const std::vector<int>& pts, const Tolerances& tol, Reports& out,
                    int* skipped) {
  try {
    out.push_back(verify_prop2_identity(frame, pts, tol.prop2));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroProbabilityCondition) throw;
    bump(skipped);
  }
}

void lemma3_instance(const ProjectionDPP& dpp, const std::vector<int>& pts, int k, const Tolerances& tol,
                     Reports& out, int* skipped) {
  try {
    out.push_back(check_lemma3(dpp, pts, k, tol.inequality));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroProbabilityCondition) throw;
    bump(skipped);
  }
}

void theorem1_instance(const ProjectionDPP& dpp, PointSet pts, bool detail, const Tolerances& tol, Reports& out) {
  Reports t1 = check_theorem1(dpp, pts, tol.inequality);
  if (!detail) {
    out.push_back(t1.front());
    return;
  }
  append(out, t1);
  if (pts.size() <= dpp.n_points() - dpp.rank()) append(out, check_chain_B12_to_B15(dpp.frame(), pts, tol.inequality));
}

void lemma4_instance(const Lemma4Context& ctx, int n_points, PointSet a, PointSet b, const Tolerances& tol,
                     Reports& out) {
  append(out, check_lemma4_step(ctx, IncreasingEvent::from_points(n_points, a), IncreasingEvent::from_points(n_points, b),
                                tol.inequality));
}

bool lemma4_admissible(const ProjectionDPP& dpp, int x0) {
  return exclusion_probability(dpp, PointSet{}.with(x0)) > kPositivityThreshold;
}

void monotonicity_instance(const ProjectionDPP& dpp, PointSet j, PointSet k, const Tolerances& tol, Reports& out,
                           int* skipped) {
  const Reports r = verify_monotonicity(dpp, j, k, tol.inequality);
  if (r.empty()) bump(skipped);
  append(out, r);
}

// ---- suites --------------------------------------------------------------

Reports run_prop1(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol, int* skipped) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points) {
    const PointSet j = as_set(*inst.points);
    require_in_ground(j, n);
    prop1_instance(dpp, j, tol, out, skipped);
    return out;
  }
  const int max_size = std::min(dpp.rank(), 3);
  for (int size = 1; size <= max_size; ++size)
    for_each_subset_of_size(n, size, [&](PointSet j) { prop1_instance(dpp, j, tol, out, skipped); });
  return out;
}

Reports run_prop2(const OrthonormalFrame& frame, const SuiteInstance& inst, const Tolerances& tol, int* skipped) {
  Reports out;
  const int n = frame.n_points();
  if (inst.points) {
    require_in_ground(as_set(*inst.points), n);
    prop2_instance(frame, *inst.points, tol, out, skipped);
    return out;
  }
  for (int size = 2; size <= std::min(n, 4); ++size)
    for_each_subset_of_size(n, size, [&](PointSet s) { prop2_instance(frame, s.points(), tol, out, skipped); });
  return out;
}

Reports run_lemma1(const OrthonormalFrame& frame, const SuiteInstance& inst, const Tolerances& tol) {
  Reports out;
  const int n = frame.n_points();
  const int room = n - frame.rank();
  if (inst.points) {
    const PointSet j = as_set(*inst.points);
    require_in_ground(j, n);
    if (j.size() < 2) throw Error(ErrorCode::DomainError, "lemma1 needs at least two points");
    out.push_back(check_lemma1(complement_v_family(frame, j), tol.lemma1_relative));
    return out;
  }
  for (int size = 2; size <= std::min(room, 6); ++size)
    for_each_subset_of_size(n, size, [&](PointSet j) {
      CheckReport r = check_lemma1(complement_v_family(frame, j), tol.lemma1_relative);
      r.witness += " points=" + j.to_string();
      out.push_back(std::move(r));
    });
  return out;
}

Reports run_lemma2(const Tolerances& tol) {
  Reports out;
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k <= 20; ++k) out.push_back(check_lemma2(k / 20.0, n, tol.lemma2));
    for (int e = 1; e <= 12; ++e) out.push_back(check_lemma2(std::pow(10.0, -e), n, tol.lemma2));
  }
  return out;
}

Reports run_lemma3(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol, int* skipped) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points) {
    const std::vector<int>& pts = *inst.points;
    require_in_ground(as_set(pts), n);
    const int size = static_cast<int>(pts.size());
    if (size < 2) throw Error(ErrorCode::DomainError, "lemma3 needs at least two points");
    if (inst.k) {
      lemma3_instance(dpp, pts, *inst.k, tol, out, skipped);
    } else {
      for (int k = 2; k <= size; ++k) lemma3_instance(dpp, pts, k, tol, out, skipped);
    }
    return out;
  }
  const int max_size = std::min(n - dpp.rank() + 1, 5);
  for (int size = 2; size <= max_size; ++size)
    for_each_subset_of_size(n, size, [&](PointSet s) {
      const std::vector<int> base = s.points();
      for (std::size_t first = 0; first < base.size(); ++first) {
        std::vector<int> pts = base;
        std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(first),
                    pts.begin() + static_cast<std::ptrdiff_t>(first) + 1);
        for (int k = 2; k <= size; ++k) lemma3_instance(dpp, pts, k, tol, out, skipped);
      }
    });
  return out;
}

Reports run_theorem1(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points) {
    const PointSet pts = as_set(*inst.points);
    require_in_ground(pts, n);
    theorem1_instance(dpp, pts, inst.detail, tol, out);
    return out;
  }
  for (int size = 2; size <= n; ++size)
    for_each_subset_of_size(n, size, [&](PointSet s) { theorem1_instance(dpp, s, true, tol, out); });
  return out;
}

Reports run_theorem2(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points || inst.points_b) {
    if (!inst.points || !inst.points_b) throw Error(ErrorCode::DomainError, "theorem2 needs --points and --points-b");
    const PointSet a = as_set(*inst.points);
    const PointSet b = as_set(*inst.points_b);
    require_in_ground(a | b, n);
    return check_theorem2(dpp, a, b, tol.inequality);
  }
  if (n > kMaxPairSweepPoints) {
    throw Error(ErrorCode::EnumerationTooLarge, "theorem2 sweeps need N <= 8; pass --points and --points-b");
  }
  const ExactLaw law = exact_law(dpp);
  for_each_subset(n, [&](PointSet a) {
    if (a.empty()) return;
    for_each_subset(n, [&](PointSet b) {
      if (!b.empty()) append(out, check_theorem2(law, a, b, tol.inequality));
    });
  });
  return out;
}

Reports run_lemma4(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol, int* skipped) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points || inst.points_b || inst.x0) {
    if (!inst.points || !inst.points_b || !inst.x0) {
      throw Error(ErrorCode::DomainError, "lemma4 needs --points, --points-b and --x0");
    }
    const PointSet a = as_set(*inst.points);
    const PointSet b = as_set(*inst.points_b);
    require_in_ground((a | b).with(*inst.x0), n);
    if (!lemma4_admissible(dpp, *inst.x0)) {
      throw Error(ErrorCode::ZeroProbabilityCondition, "P(x0 not in phi) is 0");
    }
    lemma4_instance(Lemma4Context(dpp, *inst.x0), n, a, b, tol, out);
    return out;
  }
  if (n > kMaxPairSweepPoints) {
    throw Error(ErrorCode::EnumerationTooLarge, "lemma4 sweeps need N <= 8; pass --points, --points-b and --x0");
  }
  for (int x0 = 1; x0 <= n; ++x0) {
    if (!lemma4_admissible(dpp, x0)) {
      bump(skipped);
      continue;
    }
    const Lemma4Context ctx(dpp, x0);
    for_each_subset(n, [&](PointSet a) {
      if (a.empty() || a.contains(x0)) return;
      for_each_subset(n, [&](PointSet b) {
        if (!b.empty() && !b.contains(x0)) lemma4_instance(ctx, n, a, b, tol, out);
      });
    });
  }
  return out;
}

Reports run_monotonicity(const ProjectionDPP& dpp, const SuiteInstance& inst, const Tolerances& tol, int* skipped) {
  Reports out;
  const int n = dpp.n_points();
  if (inst.points) {
    const PointSet j = as_set(*inst.points);
    const PointSet k = inst.points_b ? as_set(*inst.points_b) : PointSet{};
    require_in_ground(j | k, n);
    monotonicity_instance(dpp, j, k, tol, out, skipped);
    return out;
  }
  for (int js = 1; js <= std::min(2, n - 1); ++js)
    for_each_subset_of_size(n, js, [&](PointSet j) {
      for_each_subset(n, [&](PointSet k) {
        if (!k.empty() && k.size() <= 2 && k.disjoint(j)) monotonicity_instance(dpp, j, k, tol, out, skipped);
      });
    });
  return out;
}

// ---- random instances ----------------------------------------------------

// `count` distinct points of {1..n} in random order (partial Fisher-Yates).
std::vector<int> random_points(Rng& rng, int n, int count) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i, n - 1));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

int draw(Rng& rng, int lo, int hi) { return static_cast<int>(rng.uniform_int(lo, hi)); }

PointSet random_nonempty_subset(Rng& rng, PointSet from) {
  const std::vector<int> pts = from.points();
  const int size = draw(rng, 1, static_cast<int>(pts.size()));
  PointSet out;
  for (int idx : random_points(rng, static_cast<int>(pts.size()), size)) out = out.with(pts[static_cast<std::size_t>(idx - 1)]);
  return out;
}

struct TrialShape {
  int n_points;
  int rank;
  bool invalid;
};

TrialShape draw_shape(Rng& rng, const FuzzOptions& opt) {
  TrialShape s{};
  s.n_points = draw(rng, 2, opt.n_points_max);
  const int top = s.n_points - 1;
  switch (opt.rank_policy) {
    case RankPolicy::Uniform: s.rank = draw(rng, 1, top); break;
    case RankPolicy::Low: s.rank = draw(rng, 1, std::max(1, s.n_points / 3)); break;
    case RankPolicy::High: s.rank = draw(rng, std::max(1, top - s.n_points / 3), top); break;
  }
  s.invalid = opt.invalid_frame_rate > 0.0 && rng.uniform() < opt.invalid_frame_rate;
  return s;
}

// Frame for a trial; invalid trials keep the raw Gaussian columns, which the
// frame constructor rejects.
OrthonormalFrame trial_frame(Rng& rng, const TrialShape& s) {
  if (s.invalid) return OrthonormalFrame(rng.gaussian_matrix(s.n_points, s.rank));
  return random_frame(rng, s.n_points, s.rank);
}

Reports random_suite(const std::string& suite, const OrthonormalFrame& frame, Rng& rng, const Tolerances& tol,
                     int* skipped) {
  const ProjectionDPP dpp(frame);
  const int n = frame.n_points();
  const int p = frame.rank();
  const int room = n - p;
  SuiteInstance inst;
  inst.detail = true;
  if (suite == "prop1") {
    inst.points = random_points(rng, n, draw(rng, 1, std::min(p, 3)));
    return run_prop1(dpp, inst, tol, skipped);
  }
  if (suite == "prop2") {
    // x2..xn must fit in phi^c for the conditioning to have positive mass.
    inst.points = random_points(rng, n, draw(rng, 2, std::min({n, 4, room + 1})));
    return run_prop2(frame, inst, tol, skipped);
  }
  if (suite == "lemma1") {
    const int size = draw(rng, 2, 6);
    Reports out{check_lemma1(VectorFamily(rng.gaussian_matrix(size, size)), tol.lemma1_relative)};
    out.back().witness += " gaussian";
    if (room >= 2) {
      inst.points = random_points(rng, n, draw(rng, 2, std::min(room, 6)));
      append(out, run_lemma1(frame, inst, tol));
    }
    return out;
  }
  if (suite == "lemma2") {
    const double a = 1.0 - rng.uniform();
    return {check_lemma2(a, draw(rng, 1, 10), tol.lemma2)};
  }
  if (suite == "lemma3") {
    const int size = draw(rng, 2, std::min(room + 1, 5));
    inst.points = random_points(rng, n, size);
    inst.k = draw(rng, 2, size);
    return run_lemma3(dpp, inst, tol, skipped);
  }
  if (suite == "theorem1") {
    inst.points = random_points(rng, n, draw(rng, 2, n));
    return run_theorem1(dpp, inst, tol);
  }
  if (suite == "theorem2") {
    const PointSet ground = PointSet::full(n);
    const PointSet a = random_nonempty_subset(rng, ground);
    const PointSet b = random_nonempty_subset(rng, ground);
    inst.points = a.points();
    inst.points_b = b.points();
    return run_theorem2(dpp, inst, tol);
  }
  if (suite == "lemma4") {
    const int x0 = draw(rng, 1, n);
    const PointSet rest = PointSet::full(n).without(x0);
    const PointSet a = random_nonempty_subset(rng, rest);
    const PointSet b = random_nonempty_subset(rng, rest);
    if (!lemma4_admissible(dpp, x0)) {
      bump(skipped);
      return {};
    }
    Reports out;
    lemma4_instance(Lemma4Context(dpp, x0), n, a, b, tol, out);
    return out;
  }
  if (suite == "monotonicity") {
    const int js = draw(rng, 1, std::min(2, n - 1));
    const std::vector<int> pts = random_points(rng, n, js + draw(rng, 0, std::min(2, n - js)));
    inst.points = std::vector<int>(pts.begin(), pts.begin() + js);
    inst.points_b = std::vector<int>(pts.begin() + js, pts.end());
    return run_monotonicity(dpp, inst, tol, skipped);
  }
  throw Error(ErrorCode::DomainError, "unknown suite '" + suite + "'");
}

std::size_t suite_index(const std::string& name) {
  const auto& names = suite_names();
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"prop1",    "prop2",    "lemma1", "lemma2",      "lemma3",
                                                 "theorem1", "theorem2", "lemma4", "monotonicity"};
  return names;
}

bool is_suite_name(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> expand_suite(const std::string& name) {
  if (name == "all") return suite_names();
  if (!is_suite_name(name)) throw Error(ErrorCode::DomainError, "unknown suite '" + name + "'");
  return {name};
}

namespace {

Reports dispatch_suite(const std::string& suite, const OrthonormalFrame& frame, const SuiteInstance& instance,
                       const Tolerances& tol, int* skipped) {
  const ProjectionDPP dpp(frame);
  if (suite == "prop1") return run_prop1(dpp, instance, tol, skipped);
  if (suite == "prop2") return run_prop2(frame, instance, tol, skipped);
  if (suite == "lemma1") return run_lemma1(frame, instance, tol);
  if (suite == "lemma2") return run_lemma2(tol);
  if (suite == "lemma3") return run_lemma3(dpp, instance, tol, skipped);
  if (suite == "theorem1") return run_theorem1(dpp, instance, tol);
  if (suite == "theorem2") return run_theorem2(dpp, instance, tol);
  if (suite == "lemma4") return run_lemma4(dpp, instance, tol, skipped);
  if (suite == "monotonicity") return run_monotonicity(dpp, instance, tol, skipped);
  throw Error(ErrorCode::DomainError, "unknown suite '" + suite + "'");
}

}  // namespace

std::vector<CheckReport> run_suite(const std::string& suite, const OrthonormalFrame& frame,
                                   const SuiteInstance& instance, const Tolerances& tol, int* skipped) {
  int local_skipped = 0;
  Reports out = dispatch_suite(suite, frame, instance, tol, &local_skipped);
  if (skipped != nullptr) *skipped += local_skipped;
  // A sweep may legitimately find nothing to check; an explicit instance that
  // yields no report would otherwise read as a silent pass.
  if (out.empty() && instance.points && suite != "lemma2") {
    if (local_skipped > 0) {
      throw Error(ErrorCode::ZeroProbabilityCondition, suite + ": the conditioning event has probability zero");
    }
    throw Error(ErrorCode::DomainError, suite + ": the instance admits no check on this frame");
  }
  return out;
}

int FuzzSummary::failures() const {
  int total = 0;
  for (const auto& [name, stats] : suites) total += stats.failures;
  return total;
}

OrthonormalFrame fuzz_frame(const FuzzOptions& options, int trial) {
  Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(trial)));
  const TrialShape shape = draw_shape(rng, options);
  return trial_frame(rng, shape);
}

FuzzSummary fuzz(const FuzzOptions& options) {
  if (options.n_points_max < 2 || options.n_points_max > 12) {
    throw Error(ErrorCode::DomainError, "--max-points must lie in 2..12 for random runs");
  }
  if (options.trials < 0) throw Error(ErrorCode::DomainError, "--trials must be non-negative");
  const std::vector<std::string> suites = options.suites.empty() ? suite_names() : options.suites;
  for (const auto& s : suites)
    if (!is_suite_name(s)) throw Error(ErrorCode::DomainError, "unknown suite '" + s + "'");

  FuzzSummary summary;
  for (const auto& s : suites) summary.suites[s];
  for (int t = 0; t < options.trials; ++t) {
    ++summary.trials;
    const std::uint64_t trial_seed = mix_seed(options.seed, static_cast<std::uint64_t>(t));
    Rng rng(trial_seed);
    const TrialShape shape = draw_shape(rng, options);
    std::optional<OrthonormalFrame> frame;
    try {
      frame.emplace(trial_frame(rng, shape));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidFrame) throw;
      ++summary.invalid_frames;
      continue;
    }
    std::ostringstream prefix;
    prefix << "trial=" << t << " N=" << shape.n_points << " p=" << shape.rank;
    for (const auto& s : suites) {
      // Each suite draws from its own stream, so selecting suites does not
      // change the instances any one suite sees.
      Rng suite_rng(mix_seed(trial_seed, suite_index(s) + 1));
      SuiteStats& stats = summary.suites[s];
      int skipped = 0;
      Reports reports = random_suite(s, *frame, suite_rng, options.tolerances, &skipped);
      stats.skipped += skipped;
      if (!reports.empty()) ++stats.instances;
      for (auto& r : reports) {
        ++stats.checks;
        if (!r.pass) ++stats.failures;
        r.witness = prefix.str() + (r.witness.empty() ? "" : " " + r.witness);
        summary.reports.push_back(std::move(r));
      }
    }
  }
  return summary;
}

}  // namespace bkdpp
