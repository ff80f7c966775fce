#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "bkdpp/bk_verifier.hpp"
#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"
#include "bkdpp/io.hpp"
#include "bkdpp/random.hpp"
#include "bkdpp/suites.hpp"

namespace bkdpp::cli {

namespace {

using nlohmann::json;

// Largest ground set the CLI will enumerate over (RunConfig.max_points).
constexpr int kMaxConfigPoints = 20;

struct VerifyArgs {
  std::string frame_path;
  bool random = false;
  std::uint64_t seed = 0;
  double tolerance = kProbabilityTolerance;
  int trials = 100;
  int max_points = 7;
  std::string suite = "all";
  std::string points;
  std::string points_b;
  std::optional<int> x0;
  std::optional<int> k;
  std::string event_a;
  std::string event_b;
  std::string format = "table";
  bool all_reports = false;
  bool detail = false;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "% .6e", x);
  return buf;
}

void print_report_line(std::ostream& out, const CheckReport& r) {
  out << (r.pass ? "PASS " : "FAIL ") << r.name << "  lhs=" << sci(r.lhs) << " rhs=" << sci(r.rhs)
      << " slack=" << sci(r.slack) << " tol=" << sci(r.tolerance);
  if (!r.witness.empty()) out << "  " << r.witness;
  if (!r.note.empty()) out << "  [" << r.note << "]";
  out << '\n';
}

int exit_for(bool pass) { return pass ? kExitPass : kExitCheckFailed; }

// ---- sample --------------------------------------------------------------

int run_sample(const std::string& frame_path, int count, std::uint64_t seed, std::ostream& out) {
  if (count < 0) throw Error(ErrorCode::DomainError, "--count must be non-negative");
  const ProjectionDPP dpp(io::load_frame(frame_path));
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const std::vector<int> pts = sample(dpp, rng).points();
    for (std::size_t k = 0; k < pts.size(); ++k) out << (k ? " " : "") << pts[k];
    out << '\n';
  }
  return kExitPass;
}

// ---- cs ------------------------------------------------------------------

int run_cs(const std::string& frame_path, const std::string& points, const std::string& format, std::ostream& out) {
  const OrthonormalFrame frame = io::load_frame(frame_path);
  const PointSet j = PointSet::of(io::parse_point_list(points));
  const CSDecomposition cs = compute_cs(frame, j);
  const std::vector<CheckReport> reports = verify_prop1_probabilities(frame, j);
  if (format == "json") {
    json doc = io::cs_to_json(cs);
    json rs = json::array();
    for (const auto& r : reports) rs.push_back(io::report_to_json(r));
    doc["reports"] = std::move(rs);
    out << doc.dump(2) << '\n';
  } else {
    out << "case " << to_string(cs.case_tag) << "  N=" << cs.n_points << " p=" << cs.rank << " J=" << j.to_string()
        << '\n';
    out << "angles_rad";
    for (double a : cs.angles) out << ' ' << sci(a);
    out << "\n|u|=" << cs.u.size() << " |v|=" << cs.v.size() << " |w|=" << cs.w.size()
        << " |w_tilde|=" << cs.w_tilde.size() << '\n';
    for (const auto& r : reports) print_report_line(out, r);
  }
  return exit_for(all_pass(reports));
}

// ---- verify --------------------------------------------------------------

std::optional<std::vector<int>> optional_points(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return io::parse_point_list(text);
}

void emit_reports(const std::vector<CheckReport>& reports, const std::string& format, std::ostream& out) {
  const bool pass = all_pass(reports);
  if (format == "json") {
    json rs = json::array();
    for (const auto& r : reports) rs.push_back(io::report_to_json(r));
    out << json{{"reports", std::move(rs)}, {"pass", pass}}.dump(2) << '\n';
    return;
  }
  for (const auto& r : reports) print_report_line(out, r);
  out << "result: " << (pass ? "PASS" : "FAIL") << " (" << reports.size() << " checks)\n";
}

int verify_events(const VerifyArgs& a, const Tolerances& tol, std::ostream& out) {
  const ProjectionDPP dpp(io::load_frame(a.frame_path));
  const IncreasingEvent ea = io::load_event(a.event_a);
  const IncreasingEvent eb = io::load_event(a.event_b);
  if (ea.n_points() != dpp.n_points() || eb.n_points() != dpp.n_points()) {
    throw Error(ErrorCode::GroundSizeMismatch, "event ground sets must match the frame's N");
  }
  const ExactLaw law = exact_law(dpp);
  const std::vector<CheckReport> reports = {check_bk(law, ea, eb, tol.inequality),
                                            check_equivalence_p2(law, ea, eb, tol.inequality)};
  emit_reports(reports, a.format, out);
  return exit_for(all_pass(reports));
}

int verify_file(const VerifyArgs& a, const Tolerances& tol, std::ostream& out) {
  if (!a.event_a.empty() || !a.event_b.empty()) {
    if (a.event_a.empty() || a.event_b.empty()) throw Error(ErrorCode::DomainError, "pass both --event-a and --event-b");
    return verify_events(a, tol, out);
  }
  const OrthonormalFrame frame = io::load_frame(a.frame_path);
  if (frame.n_points() > a.max_points) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "frame has N = " + std::to_string(frame.n_points()) + " > --max-points " + std::to_string(a.max_points));
  }
  SuiteInstance inst;
  inst.points = optional_points(a.points);
  inst.points_b = optional_points(a.points_b);
  inst.x0 = a.x0;
  inst.k = a.k;
  inst.detail = a.detail;
  std::vector<CheckReport> reports;
  for (const auto& s : expand_suite(a.suite)) {
    const std::vector<CheckReport> r = run_suite(s, frame, inst, tol);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  emit_reports(reports, a.format, out);
  return exit_for(all_pass(reports));
}

int verify_random(const VerifyArgs& a, const Tolerances& tol, std::ostream& out) {
  FuzzOptions opt;
  opt.seed = a.seed;
  opt.trials = a.trials;
  opt.n_points_max = a.max_points;
  opt.suites = expand_suite(a.suite);
  opt.tolerances = tol;
  const FuzzSummary summary = fuzz(opt);

  std::vector<CheckReport> shown;
  for (const auto& r : summary.reports)
    if (a.all_reports || !r.pass) shown.push_back(r);

  if (a.format == "json") {
    json suites = json::object();
    for (const auto& [name, st] : summary.suites) {
      suites[name] = {
          {"instances", st.instances}, {"checks", st.checks}, {"failures", st.failures}, {"skipped", st.skipped}};
    }
    json rs = json::array();
    for (const auto& r : shown) rs.push_back(io::report_to_json(r));
    const json doc = {{"seed", a.seed},
                      {"rng", Rng::kName},
                      {"trials", summary.trials},
                      {"max_points", a.max_points},
                      {"suite", a.suite},
                      {"invalid_frames", summary.invalid_frames},
                      {"suites", std::move(suites)},
                      {"reports", std::move(rs)},
                      {"pass", summary.pass()}};
    out << doc.dump(2) << '\n';
  } else {
    out << "seed=" << a.seed << " rng=" << Rng::kName << " trials=" << summary.trials << " max_points=" << a.max_points
        << " suite=" << a.suite << " tolerance=" << sci(tol.inequality) << '\n';
    char line[128];
    std::snprintf(line, sizeof line, "%-14s %10s %10s %9s %8s\n", "suite", "instances", "checks", "failures",
                  "skipped");
    out << line;
    for (const auto& name : opt.suites) {
      const SuiteStats& st = summary.suites.at(name);
      std::snprintf(line, sizeof line, "%-14s %10d %10d %9d %8d\n", name.c_str(), st.instances, st.checks,
                    st.failures, st.skipped);
      out << line;
    }
    for (const auto& r : shown) print_report_line(out, r);
    out << "result: " << (summary.pass() ? "PASS" : "FAIL") << " (" << summary.failures() << " failures)\n";
  }
  return exit_for(summary.pass());
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  if (!(a.tolerance > 0.0)) throw Error(ErrorCode::DomainError, "--tolerance must be positive");
  if (a.max_points < 2 || a.max_points > kMaxConfigPoints) {
    throw Error(ErrorCode::DomainError, "--max-points must lie in 2..20");
  }
  Tolerances tol;
  tol.inequality = a.tolerance;
  if (a.random == !a.frame_path.empty()) {
    throw Error(ErrorCode::DomainError, "pass either a frame file or --random");
  }
  return a.random ? verify_random(a, tol, out) : verify_file(a, tol, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projection DPPs, CS decompositions and an exhaustive BK-inequality verifier", "dppbk"};
  app.require_subcommand(1);

  std::string frame_path;
  std::string format = "table";
  const auto format_check = CLI::IsMember({"json", "table"});

  int count = 1;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Draw exact samples, one sorted point set per line");
  sample_cmd->add_option("frame", frame_path, "Frame JSON file")->required();
  sample_cmd->add_option("--count", count, "Number of samples");
  sample_cmd->add_option("--seed", sample_seed, "Random seed");

  std::string cs_points;
  auto* cs_cmd = app.add_subcommand("cs", "CS decomposition of (E, R^N_J) with the angle-probability checks");
  cs_cmd->add_option("frame", frame_path, "Frame JSON file")->required();
  cs_cmd->add_option("--points", cs_points, "J as a comma separated list")->required();
  cs_cmd->add_option("--format", format, "json or table")->check(format_check)->default_val("json");

  VerifyArgs v;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites on a frame file or on random frames");
  verify_cmd->add_option("frame", v.frame_path, "Frame JSON file");
  verify_cmd->add_flag("--random", v.random, "Random frames and instances");
  verify_cmd->add_option("--seed", v.seed, "Random seed");
  verify_cmd->add_option("--tolerance", v.tolerance, "Slack tolerance for inequality checks");
  verify_cmd->add_option("--trials", v.trials, "Random frames to draw");
  verify_cmd->add_option("--max-points", v.max_points, "Largest ground set");
  verify_cmd->add_option("--suite", v.suite, "Suite name or all");
  verify_cmd->add_option("--points", v.points, "J, ordered points or A's generating points");
  verify_cmd->add_option("--points-b", v.points_b, "B's generating points (theorem2, lemma4) or K (monotonicity)");
  verify_cmd->add_option("--x0", v.x0, "Extra point for lemma4");
  verify_cmd->add_option("--k", v.k, "Position in 2..n for lemma3");
  verify_cmd->add_option("--event-a", v.event_a, "Event JSON file for a direct BK check");
  verify_cmd->add_option("--event-b", v.event_b, "Event JSON file for a direct BK check");
  verify_cmd->add_option("--format", v.format, "json or table")->check(format_check);
  verify_cmd->add_flag("--all-reports", v.all_reports, "Print passing reports in random mode too");
  verify_cmd->add_flag("--detail", v.detail, "theorem1 with --points: add rewritten forms and the proof chain");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // program name
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) return run_sample(frame_path, count, sample_seed, out);
    if (cs_cmd->parsed()) return run_cs(frame_path, cs_points, format, out);
    if (verify_cmd->parsed()) {
      if (v.suite != "all" && !is_suite_name(v.suite)) throw Error(ErrorCode::DomainError, "unknown suite '" + v.suite + "'");
      return run_verify(v, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bkdpp::cli
