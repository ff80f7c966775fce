#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bkdpp/bk_verifier.hpp"
#include "bkdpp/projection_dpp.hpp"

namespace bkdpp {

/// Names accepted by --suite, in run order ("all" expands to these).
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
/// "all" -> every suite; otherwise the single validated name.
std::vector<std::string> expand_suite(const std::string& name);

/// Tolerances for a run. `inequality` applies to every "<=" check; the
/// identity tolerances are fixed per check family.
struct Tolerances {
  double inequality = kProbabilityTolerance;
  double prop1 = 1e-9;
  double conditional_law = 1e-9;
  double prop2 = 1e-8;
  double lemma1_relative = 1e-9;
  double lemma2 = kScalarTolerance;
};

/// Explicit instance selection for a single-frame run. Unset fields make the
/// suite sweep every admissible instance on the frame.
struct SuiteInstance {
  std::optional<std::vector<int>> points;    ///< J, ordered points, or A's points
  std::optional<std::vector<int>> points_b;  ///< B's points, or K for monotonicity
  std::optional<int> x0;                     ///< Lemma 4's extra point
  std::optional<int> k;                      ///< Lemma 3's position in 2..n
  /// With explicit points, theorem1 reports only its headline inequality
  /// unless `detail` asks for the rewritten forms and the proof chain.
  bool detail = false;
};

/// Runs one suite on one frame. Instances whose conditioning event has
/// probability zero are skipped and counted in `skipped`.
std::vector<CheckReport> run_suite(const std::string& suite, const OrthonormalFrame& frame,
                                   const SuiteInstance& instance, const Tolerances& tol, int* skipped = nullptr);

enum class RankPolicy { Uniform, Low, High };

struct FuzzOptions {
  std::uint64_t seed = 0;
  int trials = 100;
  int n_points_max = 7;
  RankPolicy rank_policy = RankPolicy::Uniform;
  std::vector<std::string> suites;  ///< empty = all
  Tolerances tolerances;
  /// Fraction of trials whose frame is left un-orthonormalized, to exercise
  /// the invalid-instance path.
  double invalid_frame_rate = 0.0;
};

struct SuiteStats {
  int instances = 0;
  int checks = 0;
  int failures = 0;
  int skipped = 0;
};

struct FuzzSummary {
  int trials = 0;
  int invalid_frames = 0;
  std::map<std::string, SuiteStats> suites;
  /// Every report, in trial order then suite order. Witnesses start with
  /// "trial=<t> N=<N> p=<p>" so a failure can be replayed with fuzz_frame.
  std::vector<CheckReport> reports;

  int failures() const;
  bool pass() const { return failures() == 0; }
};

/// Random frames and random instances for every selected suite; fully
/// determined by the options. Throws DomainError if n_points_max is outside 2..12.
FuzzSummary fuzz(const FuzzOptions& options);

/// The frame (or the invalid-frame error) trial `trial` of a fuzz run uses.
OrthonormalFrame fuzz_frame(const FuzzOptions& options, int trial);

}  // namespace bkdpp
