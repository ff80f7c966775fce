// Python bindings: frames, exact probabilities, sampling, CS decomposition,
// conditioning, the BK checks and the fuzzer. Point sets cross the boundary
// as lists of 1-based ints; vector families as 2-D arrays with one member
// per row.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bkdpp/bk_verifier.hpp"
#include "bkdpp/conditioning.hpp"
#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/errors.hpp"
#include "bkdpp/io.hpp"
#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/suites.hpp"

namespace py = pybind11;
using namespace bkdpp;

namespace {

PointSet to_set(const std::vector<int>& points) { return PointSet::of(points); }

Matrix members_as_rows(const VectorFamily& f) { return f.matrix().transpose(); }

IncreasingEvent to_event(int n_points, const std::vector<std::vector<int>>& generators) {
  std::vector<PointSet> raw;
  raw.reserve(generators.size());
  for (const auto& g : generators) raw.push_back(to_set(g));
  return IncreasingEvent::normalize_generators(n_points, raw);
}

py::dict law_dict(const ExactLaw& law) {
  py::dict out;
  for (const auto& e : law.entries()) out[py::tuple(py::cast(e.outcome.points()))] = e.probability;
  return out;
}

RankPolicy parse_rank_policy(const std::string& s) {
  if (s == "uniform") return RankPolicy::Uniform;
  if (s == "low") return RankPolicy::Low;
  if (s == "high") return RankPolicy::High;
  throw Error(ErrorCode::DomainError, "rank policy must be uniform, low or high, got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact projection DPP probabilities and BK inequality checks";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("RNG_NAME") = Rng::kName;

  py::class_<CheckReport>(m, "Report")
      .def_readonly("name", &CheckReport::name)
      .def_readonly("lhs", &CheckReport::lhs)
      .def_readonly("rhs", &CheckReport::rhs)
      .def_readonly("slack", &CheckReport::slack)
      .def_readonly("tolerance", &CheckReport::tolerance)
      .def_readonly("passed", &CheckReport::pass)
      .def_readonly("witness", &CheckReport::witness)
      .def_readonly("note", &CheckReport::note)
      .def("to_dict", [](const CheckReport& r) { return py::module_::import("json").attr("loads")(io::report_to_json(r).dump()); })
      .def("__bool__", [](const CheckReport& r) { return r.pass; })
      .def("__repr__", [](const CheckReport& r) {
        return "<Report " + r.name + (r.pass ? " PASS" : " FAIL") + " lhs=" + std::to_string(r.lhs) +
               " rhs=" + std::to_string(r.rhs) + ">";
      });

  py::class_<OrthonormalFrame>(m, "Frame")
      .def(py::init<Matrix, double>(), py::arg("columns"), py::arg("tolerance") = OrthonormalFrame::kDefaultTolerance,
           "N x p matrix with orthonormal columns")
      .def_static(
          "from_spanning", [](const Matrix& columns) { return OrthonormalFrame::from_spanning(VectorFamily(columns)); },
          py::arg("columns"), "Orthonormalizes the columns of an N x p matrix")
      .def_static(
          "random",
          [](int n_points, int rank, std::uint64_t seed) {
            Rng rng(seed);
            return random_frame(rng, n_points, rank);
          },
          py::arg("n_points"), py::arg("rank"), py::arg("seed") = 0)
      .def_static(
          "from_json", [](const std::string& text) { return io::frame_from_json(nlohmann::json::parse(text)); },
          py::arg("text"))
      .def("to_json", [](const OrthonormalFrame& f) { return io::frame_to_json(f).dump(); })
      .def_property_readonly("n_points", &OrthonormalFrame::n_points)
      .def_property_readonly("rank", &OrthonormalFrame::rank)
      .def_property_readonly("columns", &OrthonormalFrame::columns)
      .def("row", &OrthonormalFrame::row, py::arg("point"))
      .def("complement", &complement_frame)
      .def("__repr__", [](const OrthonormalFrame& f) {
        return "<Frame N=" + std::to_string(f.n_points()) + " p=" + std::to_string(f.rank()) + ">";
      });

  m.def(
      "inclusion_probability",
      [](const OrthonormalFrame& f, const std::vector<int>& j) { return inclusion_probability(ProjectionDPP(f), to_set(j)); },
      py::arg("frame"), py::arg("points"));
  m.def(
      "exclusion_probability",
      [](const OrthonormalFrame& f, const std::vector<int>& j) { return exclusion_probability(ProjectionDPP(f), to_set(j)); },
      py::arg("frame"), py::arg("points"));
  m.def(
      "elementary_probability",
      [](const OrthonormalFrame& f, const std::vector<int>& s) { return elementary_probability(ProjectionDPP(f), to_set(s)); },
      py::arg("frame"), py::arg("points"));
  m.def(
      "exact_law", [](const OrthonormalFrame& f) { return law_dict(exact_law(ProjectionDPP(f))); }, py::arg("frame"),
      "Every p-subset (as a sorted tuple) mapped to its probability");
  m.def(
      "sample",
      [](const OrthonormalFrame& f, int count, std::uint64_t seed) {
        if (count < 0) throw Error(ErrorCode::DomainError, "count must be >= 0");
        const ProjectionDPP dpp(f);
        Rng rng(seed);
        std::vector<std::vector<int>> out;
        out.reserve(count);
        for (int i = 0; i < count; ++i) out.push_back(sample(dpp, rng).points());
        return out;
      },
      py::arg("frame"), py::arg("count") = 1, py::arg("seed") = 0,
      "Exact samples; the same seed gives the same samples as the command line tool");

  py::class_<CSDecomposition>(m, "CSDecomposition")
      .def_property_readonly("case", [](const CSDecomposition& cs) { return std::string(to_string(cs.case_tag)); })
      .def_readonly("n_points", &CSDecomposition::n_points)
      .def_readonly("rank", &CSDecomposition::rank)
      .def_property_readonly("points", [](const CSDecomposition& cs) { return cs.j.points(); })
      .def_readonly("angles", &CSDecomposition::angles)
      .def_readonly("cosines", &CSDecomposition::cosines)
      .def_readonly("sines", &CSDecomposition::sines)
      .def_property_readonly("forced_zeros", &CSDecomposition::forced_zeros)
      .def_property_readonly("u", [](const CSDecomposition& cs) { return members_as_rows(cs.u); })
      .def_property_readonly("v", [](const CSDecomposition& cs) { return members_as_rows(cs.v); })
      .def_property_readonly("w", [](const CSDecomposition& cs) { return members_as_rows(cs.w); })
      .def_property_readonly("w_tilde", [](const CSDecomposition& cs) { return members_as_rows(cs.w_tilde); })
      .def("products", [](const CSDecomposition& cs) {
        const CosSinProducts p = cos_sin_products(cs);
        return py::make_tuple(p.cos_sq, p.sin_sq);
      });

  m.def(
      "compute_cs",
      [](const OrthonormalFrame& f, const std::vector<int>& j) { return compute_cs(f, to_set(j)); }, py::arg("frame"),
      py::arg("points"));

  py::class_<ConditionedProcess>(m, "ConditionedProcess")
      .def_property_readonly("kind",
                             [](const ConditionedProcess& c) {
                               return c.kind == ConditionKind::Include ? "include" : "exclude";
                             })
      .def_property_readonly("condition", [](const ConditionedProcess& c) { return c.condition.points(); })
      .def_readonly("labels", &ConditionedProcess::labels)
      .def_property_readonly("frame", [](const ConditionedProcess& c) { return c.result.frame(); })
      .def("law_in_base_labels", [](const ConditionedProcess& c) { return law_dict(law_in_base_labels(c)); });

  m.def(
      "condition_on_inclusion",
      [](const OrthonormalFrame& f, const std::vector<int>& j) { return condition_on_inclusion(ProjectionDPP(f), to_set(j)); },
      py::arg("frame"), py::arg("points"));
  m.def(
      "condition_on_exclusion",
      [](const OrthonormalFrame& f, const std::vector<int>& j) { return condition_on_exclusion(ProjectionDPP(f), to_set(j)); },
      py::arg("frame"), py::arg("points"));

  m.def(
      "check_bk",
      [](const OrthonormalFrame& f, const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b,
         double tol) {
        const int n = f.n_points();
        return check_bk(ProjectionDPP(f), to_event(n, a), to_event(n, b), tol);
      },
      py::arg("frame"), py::arg("a"), py::arg("b"), py::arg("tolerance") = kProbabilityTolerance,
      "BK for the increasing events generated by two lists of generators");
  m.def(
      "check_theorem1",
      [](const OrthonormalFrame& f, const std::vector<int>& points, double tol) {
        return check_theorem1(ProjectionDPP(f), to_set(points), tol);
      },
      py::arg("frame"), py::arg("points"), py::arg("tolerance") = kProbabilityTolerance);
  m.def(
      "check_theorem2",
      [](const OrthonormalFrame& f, const std::vector<int>& a, const std::vector<int>& b, double tol) {
        return check_theorem2(ProjectionDPP(f), to_set(a), to_set(b), tol);
      },
      py::arg("frame"), py::arg("a_points"), py::arg("b_points"), py::arg("tolerance") = kProbabilityTolerance);
  m.def(
      "check_lemma1", [](const Matrix& rows, double tol) { return check_lemma1(VectorFamily::from_rows(rows), tol); },
      py::arg("vectors"), py::arg("relative_tolerance") = 1e-9, "vectors: n x n array, one vector per row");
  m.def("check_lemma2", &check_lemma2, py::arg("a"), py::arg("n"), py::arg("tolerance") = kScalarTolerance);

  py::class_<SuiteStats>(m, "SuiteStats")
      .def_readonly("instances", &SuiteStats::instances)
      .def_readonly("checks", &SuiteStats::checks)
      .def_readonly("failures", &SuiteStats::failures)
      .def_readonly("skipped", &SuiteStats::skipped);

  py::class_<FuzzSummary>(m, "FuzzSummary")
      .def_readonly("trials", &FuzzSummary::trials)
      .def_readonly("invalid_frames", &FuzzSummary::invalid_frames)
      .def_readonly("suites", &FuzzSummary::suites)
      .def_readonly("reports", &FuzzSummary::reports)
      .def_property_readonly("failures", &FuzzSummary::failures)
      .def_property_readonly("passed", &FuzzSummary::pass);

  m.attr("SUITES") = suite_names();

  m.def(
      "fuzz",
      [](std::uint64_t seed, int trials, int max_points, const std::string& suite, const std::string& rank_policy,
         double tolerance, double invalid_frame_rate) {
        FuzzOptions o;
        o.seed = seed;
        o.trials = trials;
        o.n_points_max = max_points;
        o.suites = expand_suite(suite);
        o.rank_policy = parse_rank_policy(rank_policy);
        o.tolerances.inequality = tolerance;
        o.invalid_frame_rate = invalid_frame_rate;
        py::gil_scoped_release release;
        return fuzz(o);
      },
      py::arg("seed") = 0, py::arg("trials") = 100, py::arg("max_points") = 7, py::arg("suite") = "all",
      py::arg("rank_policy") = "uniform", py::arg("tolerance") = kProbabilityTolerance,
      py::arg("invalid_frame_rate") = 0.0);
}
