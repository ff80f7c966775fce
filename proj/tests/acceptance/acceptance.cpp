// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here and never read from the command line.
//
//   bkdpp_acceptance                 every criterion
//   bkdpp_acceptance 3 8             only criteria 3 and 8
//
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "bkdpp/bk_verifier.hpp"
#include "bkdpp/conditioning.hpp"
#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"
#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/random.hpp"

#ifndef BKDPP_CLI_PATH
#error "BKDPP_CLI_PATH must point at the dppbk executable"
#endif

using namespace bkdpp;

namespace {

// ---- pinned tolerances ---------------------------------------------------
constexpr double kLawTol = 1e-10;            // 1
constexpr double kAngleTol = 1e-9;           // 2
constexpr double kConditionalLawTol = 1e-9;  // 3
constexpr double kSlackTol = 1e-10;          // 4, 8, 9, 10
constexpr double kTwoPointTol = 1e-8;        // 5
constexpr double kWedgeRelTol = 1e-9;        // 6
constexpr double kScalarTol = 1e-12;         // 7
constexpr double kResidualTol = 1e-10;       // 11
constexpr double kChiSquaredAlpha = 1e-3;    // 12
constexpr double kMarginalSe = 4.0;          // 12

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

struct Shape {
  int n_points;
  int rank;
};

Shape random_shape(Rng& rng, int n_min, int n_max, int room_min = 1) {
  const int n = static_cast<int>(rng.uniform_int(n_min, n_max));
  const int p = static_cast<int>(rng.uniform_int(1, n - room_min));
  return {n, p};
}

PointSet random_subset_of_size(Rng& rng, int n, int k) {
  PointSet s;
  while (s.size() < k) s = s.with(static_cast<int>(rng.uniform_int(1, n)));
  return s;
}

std::vector<int> random_ordered_points(Rng& rng, int n, int k) {
  std::vector<int> out;
  while (static_cast<int>(out.size()) < k) {
    const int x = static_cast<int>(rng.uniform_int(1, n));
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

// Frames for the exhaustive sweeps: `per_shape` frames for every (N, p)
// with n_min <= N <= n_max and 1 <= p <= N - room_min.
std::vector<OrthonormalFrame> sweep_frames(Rng& rng, int n_min, int n_max, int room_min, int per_shape) {
  std::vector<OrthonormalFrame> out;
  for (int n = n_min; n <= n_max; ++n)
    for (int p = 1; p <= n - room_min; ++p)
      for (int k = 0; k < per_shape; ++k) out.push_back(random_frame(rng, n, p));
  return out;
}

// ---- criteria ------------------------------------------------------------

Outcome law_normalization() {
  Rng rng(1001);
  double worst_total = 0.0;
  double worst_inclusion = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Shape s = random_shape(rng, 2, 10);
    const ProjectionDPP dpp(random_frame(rng, s.n_points, s.rank));
    const ExactLaw law = exact_law(dpp);
    worst_total = std::max(worst_total, std::abs(law.total() - 1.0));
    for_each_subset(s.n_points, [&](PointSet j) {
      if (j.size() > s.rank) return;
      worst_inclusion = std::max(worst_inclusion, std::abs(inclusion_probability(dpp, j) - law.includes(j)));
    });
  }
  return {worst_total <= kLawTol && worst_inclusion <= kLawTol,
          "200 frames N<=10; max|sum-1|=" + fmt(worst_total) + " max|P(J)-enum|=" + fmt(worst_inclusion)};
}

Outcome angle_products() {
  Rng rng(1002);
  double worst = 0.0;
  int sets = 0;
  for (int t = 0; t < 100; ++t) {
    const Shape s = random_shape(rng, 2, 10);
    const OrthonormalFrame f = random_frame(rng, s.n_points, s.rank);
    const int max_size = std::min({s.rank, s.n_points - s.rank, 3});
    for_each_subset(s.n_points, [&](PointSet j) {
      if (j.empty() || j.size() > max_size) return;
      ++sets;
      for (const auto& r : verify_prop1_probabilities(f, j, kAngleTol)) worst = std::max(worst, std::abs(r.diff()));
    });
  }
  return {worst < kAngleTol, "100 frames, " + std::to_string(sets) + " sets J; max diff=" + fmt(worst)};
}

struct ConditioningSweep {
  int included = 0;
  int excluded = 0;
  int pairs = 0;
  double worst_law = 0.0;
  double worst_slack = 0.0;
};

const ConditioningSweep& conditioning_sweep() {
  static const ConditioningSweep sweep = [] {
    ConditioningSweep out;
    Rng rng(1003);
    for (const OrthonormalFrame& f : sweep_frames(rng, 2, 8, 1, 3)) {
      const ProjectionDPP dpp(f);
      const int n = f.n_points();
      const int p = f.rank();
      for_each_subset(n, [&](PointSet j) {
        if (j.empty() || j.size() > 2) return;
        if (j.size() < p && inclusion_probability(dpp, j) > kPositivityThreshold) {
          ++out.included;
          const CheckReport r = verify_conditional_law(dpp, condition_on_inclusion(dpp, j), kConditionalLawTol);
          out.worst_law = std::max(out.worst_law, r.lhs);
        }
        if (j.size() <= n - p && exclusion_probability(dpp, j) > kPositivityThreshold) {
          ++out.excluded;
          const CheckReport r = verify_conditional_law(dpp, condition_on_exclusion(dpp, j), kConditionalLawTol);
          out.worst_law = std::max(out.worst_law, r.lhs);
        }
        for_each_subset(n, [&](PointSet k) {
          if (k.empty() || k.size() > 2 || !k.disjoint(j)) return;
          for (const auto& r : verify_monotonicity(dpp, j, k, kSlackTol)) {
            ++out.pairs;
            out.worst_slack = std::min(out.worst_slack, r.slack);
          }
        });
      });
    }
    return out;
  }();
  return sweep;
}

Outcome conditional_laws() {
  const ConditioningSweep& s = conditioning_sweep();
  return {s.worst_law < kConditionalLawTol && s.included > 0 && s.excluded > 0,
          "N<=8 all (N,p), |J|<=2: " + std::to_string(s.included) + " include + " + std::to_string(s.excluded) +
              " exclude; max law diff=" + fmt(s.worst_law)};
}

Outcome monotonicity() {
  const ConditioningSweep& s = conditioning_sweep();
  return {s.worst_slack >= -kSlackTol && s.pairs > 0,
          std::to_string(s.pairs) + " (J,K) inequalities; min slack=" + fmt(s.worst_slack)};
}

Outcome two_point_identity() {
  Rng rng(1005);
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    // N - p >= 3 keeps x2..x4 excludable together.
    const Shape s = random_shape(rng, 5, 9, 3);
    const OrthonormalFrame f = random_frame(rng, s.n_points, s.rank);
    for (int n = 2; n <= 4; ++n) {
      const CheckReport r = verify_prop2_identity(f, random_ordered_points(rng, s.n_points, n), kTwoPointTol);
      worst = std::max(worst, std::abs(r.diff()));
      ++checked;
    }
  }
  return {worst < kTwoPointTol, "100 frames x n in {2,3,4} (" + std::to_string(checked) + "); max |L-R|=" + fmt(worst)};
}

Outcome leave_one_out_wedges_identity() {
  Rng rng(1006);
  double worst = 0.0;
  std::array<int, 7> per_n{};
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 6));
    const int p = static_cast<int>(rng.uniform_int(1, 4));
    const int n_points = n + p + static_cast<int>(rng.uniform_int(0, 2));
    const OrthonormalFrame f = random_frame(rng, n_points, p);
    const CheckReport r = check_lemma1(complement_v_family(f, random_subset_of_size(rng, n_points, n)), kWedgeRelTol);
    worst = std::max(worst, -r.slack);
    ++per_n[static_cast<std::size_t>(n)];
  }
  std::string counts;
  for (int n = 2; n <= 6; ++n) counts += (n > 2 ? "," : "") + std::to_string(per_n[static_cast<std::size_t>(n)]);
  return {worst < kWedgeRelTol, "100 v-families (n=2..6 counts " + counts + "); max rel err=" + fmt(worst)};
}

Outcome scalar_bound() {
  // 50k linear and 50k log-spaced values of a in (0, 1], times n = 1..10.
  constexpr int kPerKind = 50000;
  std::vector<double> grid;
  grid.reserve(2 * kPerKind);
  for (int k = 1; k <= kPerKind; ++k) grid.push_back(static_cast<double>(k) / kPerKind);
  for (int k = 0; k < kPerKind; ++k) grid.push_back(std::pow(10.0, -12.0 + 12.0 * k / (kPerKind - 1)));
  double worst = -1e300;
  long evaluated = 0;
  long failures = 0;
  for (int n = 1; n <= 10; ++n) {
    for (double a : grid) {
      const CheckReport r = check_lemma2(a, n, kScalarTol);
      worst = std::max(worst, r.lhs);
      if (!r.pass) ++failures;
      ++evaluated;
    }
  }
  return {worst <= kScalarTol && failures == 0 && evaluated == 1000000,
          std::to_string(evaluated) + " grid points; max value=" + fmt(worst)};
}

Outcome theorem1_chain() {
  Rng rng(1008);
  int sets = 0;
  int links = 0;
  int violations = 0;
  double worst = 0.0;
  for (const OrthonormalFrame& f : sweep_frames(rng, 3, 8, 2, 2)) {
    const ProjectionDPP dpp(f);
    const int room = f.n_points() - f.rank();
    for_each_subset(f.n_points(), [&](PointSet s) {
      if (s.size() < 2 || s.size() > room) return;
      ++sets;
      std::vector<CheckReport> reports = check_theorem1(dpp, s, kSlackTol);
      const std::vector<CheckReport> chain = check_chain_B12_to_B15(f, s, kSlackTol);
      reports.insert(reports.end(), chain.begin(), chain.end());
      for (const auto& r : reports) {
        ++links;
        if (r.note == "degenerate") continue;
        worst = std::min(worst, r.slack);
        if (r.slack < -kSlackTol) ++violations;
      }
    });
  }
  return {violations == 0 && sets > 0, "N<=8 all (N,p), " + std::to_string(sets) + " point sets, " +
                                           std::to_string(links) + " links; violations=" + std::to_string(violations) +
                                           " min slack=" + fmt(worst)};
}

Outcome lemma3() {
  Rng rng(1009);
  int accepted = 0;
  int rejected = 0;
  double worst = 0.0;
  while (accepted < 500) {
    const Shape s = random_shape(rng, 4, 8, 2);
    const ProjectionDPP dpp(random_frame(rng, s.n_points, s.rank));
    const int n = static_cast<int>(rng.uniform_int(3, std::min(s.n_points - s.rank + 1, 5)));
    if (n < 3) continue;
    const std::vector<int> pts = random_ordered_points(rng, s.n_points, n);
    const int k = static_cast<int>(rng.uniform_int(2, n));
    try {
      worst = std::min(worst, check_lemma3(dpp, pts, k, kSlackTol).slack);
      ++accepted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroProbabilityCondition) throw;
      ++rejected;
    }
  }
  return {worst >= -kSlackTol, "500 instances (" + std::to_string(rejected) +
                                   " redrawn for zero conditioning mass); min slack=" + fmt(worst)};
}

struct PairSweep {
  long pairs = 0;
  long bk_violations = 0;
  double bk_worst = 0.0;
  long steps = 0;
  long step_failures = 0;
  double step_worst = 0.0;
  double residual_worst = 0.0;
};

const PairSweep& pair_sweep() {
  static const PairSweep sweep = [] {
    PairSweep out;
    Rng rng(1010);
    for (const OrthonormalFrame& f : sweep_frames(rng, 2, 7, 1, 2)) {
      const ProjectionDPP dpp(f);
      const int n = f.n_points();
      const ExactLaw law = exact_law(dpp);
      // Events generated by any point set, including the vacuous one.
      for_each_subset(n, [&](PointSet a) {
        for_each_subset(n, [&](PointSet b) {
          ++out.pairs;
          for (const auto& r : check_theorem2(law, a, b, kSlackTol)) {
            if (r.name == "theorem2.bk") {
              out.bk_worst = std::min(out.bk_worst, r.slack);
              if (r.slack < -kSlackTol) ++out.bk_violations;
            } else if (r.name == "theorem2.complemented_form") {
              out.residual_worst = std::max(out.residual_worst, std::abs(r.diff()));
            }
          }
        });
      });
      // The induction step wherever its preconditions hold.
      for (int x0 = 1; x0 <= n; ++x0) {
        if (exclusion_probability(dpp, PointSet{}.with(x0)) <= kPositivityThreshold) continue;
        const Lemma4Context ctx(dpp, x0);
        for_each_subset(n, [&](PointSet a) {
          if (a.empty() || a.contains(x0)) return;
          for_each_subset(n, [&](PointSet b) {
            if (b.empty() || b.contains(x0)) return;
            ++out.steps;
            for (const auto& r : check_lemma4_step(ctx, IncreasingEvent::from_points(n, a),
                                                   IncreasingEvent::from_points(n, b), kSlackTol)) {
              out.step_worst = std::min(out.step_worst, r.slack);
              if (!r.pass) ++out.step_failures;
            }
          });
        });
      }
    }
    return out;
  }();
  return sweep;
}

Outcome theorem2() {
  const PairSweep& s = pair_sweep();
  return {s.bk_violations == 0 && s.step_failures == 0 && s.steps > 0,
          "N<=7 all (N,p): " + std::to_string(s.pairs) + " event pairs, violations=" + std::to_string(s.bk_violations) +
              " min slack=" + fmt(s.bk_worst) + "; " + std::to_string(s.steps) + " induction steps, failures=" +
              std::to_string(s.step_failures) + " min slack=" + fmt(s.step_worst)};
}

Outcome residual_identity() {
  const PairSweep& s = pair_sweep();
  return {s.residual_worst < kResidualTol,
          std::to_string(s.pairs) + " instances; max |residual difference|=" + fmt(s.residual_worst)};
}

// Pearson statistic with bins of expected count < 5 pooled together; the
// pooled bin is folded into the smallest remaining bin if still too small.
double chi_squared_p_value(const ExactLaw& law, const std::map<std::uint64_t, long>& counts, long draws, int* dof) {
  std::vector<std::pair<double, double>> bins;  // (expected, observed)
  double pooled_e = 0.0;
  double pooled_o = 0.0;
  long seen = 0;
  for (const auto& e : law.entries()) {
    const double expected = e.probability * static_cast<double>(draws);
    const auto it = counts.find(e.outcome.bits());
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    seen += static_cast<long>(observed);
    if (expected < 5.0) {
      pooled_e += expected;
      pooled_o += observed;
    } else {
      bins.emplace_back(expected, observed);
    }
  }
  // Any draw outside the law's support lands in the pooled bin.
  pooled_o += static_cast<double>(draws - seen);
  if (pooled_e > 0.0 || pooled_o > 0.0) {
    if (pooled_e >= 5.0 || bins.empty()) {
      bins.emplace_back(pooled_e, pooled_o);
    } else {
      auto smallest = std::min_element(bins.begin(), bins.end());
      smallest->first += pooled_e;
      smallest->second += pooled_o;
    }
  }
  double stat = 0.0;
  for (const auto& [e, o] : bins) stat += e > 0.0 ? (o - e) * (o - e) / e : (o > 0.0 ? 1e300 : 0.0);
  *dof = static_cast<int>(bins.size()) - 1;
  if (*dof < 1) return 1.0;
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(*dof), stat));
}

Outcome sampler() {
  Rng frame_rng(1012);
  constexpr long kDraws = 100000;
  double min_p = 1.0;
  double worst_z = 0.0;
  int failures = 0;
  for (int t = 0; t < 20; ++t) {
    const Shape s = random_shape(frame_rng, 2, 6);
    const ProjectionDPP dpp(random_frame(frame_rng, s.n_points, s.rank));
    const ExactLaw law = exact_law(dpp);
    Rng rng(mix_seed(1012, static_cast<std::uint64_t>(t)));
    std::map<std::uint64_t, long> counts;
    std::vector<long> hits(static_cast<std::size_t>(s.n_points), 0);
    for (long d = 0; d < kDraws; ++d) {
      const PointSet x = sample(dpp, rng);
      ++counts[x.bits()];
      for (int i : x.points()) ++hits[static_cast<std::size_t>(i - 1)];
    }
    int dof = 0;
    const double p_value = chi_squared_p_value(law, counts, kDraws, &dof);
    min_p = std::min(min_p, p_value);
    bool ok = p_value >= kChiSquaredAlpha;
    for (int i = 1; i <= s.n_points; ++i) {
      const double q = law.includes(PointSet{}.with(i));
      const double se = std::sqrt(q * (1.0 - q) / kDraws);
      const double gap = std::abs(static_cast<double>(hits[static_cast<std::size_t>(i - 1)]) / kDraws - q);
      if (se > 0.0) {
        worst_z = std::max(worst_z, gap / se);
        ok = ok && gap <= kMarginalSe * se;
      } else {
        ok = ok && gap == 0.0;
      }
    }
    if (!ok) ++failures;
  }
  return {failures == 0, "20 frames N<=6 x 100k draws; min chi2 p=" + fmt(min_p) + " max marginal |z|=" +
                             fmt(worst_z) + " failing frames=" + std::to_string(failures)};
}

std::string capture(const std::string& cmd, int* status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  *status = pclose(pipe);
  return out;
}

Outcome determinism() {
  const std::string cmd =
      std::string("\"") + BKDPP_CLI_PATH + "\" verify --random --seed 7 --trials 1000 --suite all --format json --all-reports";
  int s1 = 0;
  int s2 = 0;
  const std::string a = capture(cmd, &s1);
  const std::string b = capture(cmd, &s2);
  const bool same = !a.empty() && a == b && s1 == s2;
  return {same && s1 == 0, "two runs: " + std::to_string(a.size()) + " bytes each, identical=" +
                               (same ? std::string("yes") : std::string("no")) + ", exit=" + std::to_string(s1)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "law normalization and consistency", law_normalization},
      {2, "angle products equal inclusion/exclusion probabilities", angle_products},
      {3, "conditioned processes match brute-force conditional laws", conditional_laws},
      {4, "conditioning monotonicity", monotonicity},
      {5, "two-point conditional wedge identity", two_point_identity},
      {6, "leave-one-out wedge norm identity", leave_one_out_wedges_identity},
      {7, "scalar AM-GM bound on a 10^6 grid", scalar_bound},
      {8, "A o A bound and every link of its proof chain", theorem1_chain},
      {9, "conditional exclusion ratio inequality", lemma3},
      {10, "BK for singleton-generated events and the induction step", theorem2},
      {11, "complemented-form residual identity", residual_identity},
      {12, "sampler goodness of fit", sampler},
      {13, "CLI determinism", determinism},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
  bool all_ok = true;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-58s", o.pass ? "PASS" : "FAIL", c.id, c.title);
    char tail[32];
    std::snprintf(tail, sizeof tail, " (%.1fs)", secs);
    std::cout << head << " " << o.detail << tail << std::endl;
    all_ok = all_ok && o.pass;
  }
  return all_ok ? 0 : 1;
}
