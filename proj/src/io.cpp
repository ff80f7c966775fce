#include "bkdpp/io.hpp"

#include <fstream>
#include <sstream>

#include "bkdpp/errors.hpp"

namespace bkdpp::io {

using nlohmann::json;

namespace {

int required_int(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string("missing integer field '") + key + "'");
  }
  return doc.at(key).get<int>();
}

const json& required_array(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array()) {
    throw Error(ErrorCode::ParseError, std::string("missing array field '") + key + "'");
  }
  return doc.at(key);
}

json family_to_json(const VectorFamily& fam) {
  json out = json::array();
  for (Eigen::Index k = 0; k < fam.size(); ++k) {
    json member = json::array();
    for (Eigen::Index i = 0; i < fam.dim(); ++i) member.push_back(fam.matrix()(i, k));
    out.push_back(std::move(member));
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

OrthonormalFrame frame_from_json(const json& doc) {
  const int n = required_int(doc, "n_points");
  const int p = required_int(doc, "rank");
  const json& cols = required_array(doc, "columns");
  if (n < 1 || p < 1 || static_cast<int>(cols.size()) != p) {
    throw Error(ErrorCode::ParseError, "frame needs rank >= 1 columns, got " + std::to_string(cols.size()));
  }
  Matrix m(n, p);
  for (int k = 0; k < p; ++k) {
    const json& col = cols[static_cast<std::size_t>(k)];
    if (!col.is_array() || static_cast<int>(col.size()) != n) {
      throw Error(ErrorCode::ParseError, "column " + std::to_string(k + 1) + " must have n_points entries");
    }
    for (int i = 0; i < n; ++i) {
      const json& x = col[static_cast<std::size_t>(i)];
      if (!x.is_number()) throw Error(ErrorCode::ParseError, "non-numeric frame entry");
      m(i, k) = x.get<double>();
    }
  }
  return OrthonormalFrame(std::move(m), kLoadTolerance);
}

json frame_to_json(const OrthonormalFrame& frame) {
  return {{"n_points", frame.n_points()}, {"rank", frame.rank()}, {"columns", family_to_json(frame.column_family())}};
}

OrthonormalFrame load_frame(const std::string& path) { return frame_from_json(read_json_file(path)); }

IncreasingEvent event_from_json(const json& doc) {
  const int n = required_int(doc, "n_points");
  const json& gens = required_array(doc, "generators");
  std::vector<PointSet> raw;
  for (const json& g : gens) {
    if (!g.is_array()) throw Error(ErrorCode::ParseError, "each generator must be a list of points");
    std::vector<int> pts;
    for (const json& x : g) {
      if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "generator points must be integers");
      pts.push_back(x.get<int>());
    }
    raw.push_back(PointSet::of(pts));
  }
  return IncreasingEvent::normalize_generators(n, raw);
}

json event_to_json(const IncreasingEvent& event) {
  json gens = json::array();
  for (PointSet g : event.generators()) gens.push_back(g.points());
  return {{"n_points", event.n_points()}, {"generators", std::move(gens)}};
}

IncreasingEvent load_event(const std::string& path) { return event_from_json(read_json_file(path)); }

json cs_to_json(const CSDecomposition& cs) {
  return {{"case", std::string(to_string(cs.case_tag))},
          {"n_points", cs.n_points},
          {"rank", cs.rank},
          {"points", cs.j.points()},
          {"angles_rad", cs.angles},
          {"u", family_to_json(cs.u)},
          {"v", family_to_json(cs.v)},
          {"w", family_to_json(cs.w)},
          {"w_tilde", family_to_json(cs.w_tilde)}};
}

json report_to_json(const CheckReport& r) {
  json out = {{"name", r.name},   {"lhs", r.lhs},           {"rhs", r.rhs},  {"diff", r.diff()},
              {"slack", r.slack}, {"tolerance", r.tolerance}, {"pass", r.pass}};
  if (!r.witness.empty()) out["witness"] = r.witness;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::vector<int> parse_point_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad point '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::ParseError, "bad point '" + item + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace bkdpp::io
