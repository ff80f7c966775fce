#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bkdpp/cs_decomposition.hpp"
#include "bkdpp/increasing_events.hpp"
#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/report.hpp"

namespace bkdpp::io {

/// Orthonormality tolerance applied to frames read from disk.
inline constexpr double kLoadTolerance = 1e-8;

/// {"n_points": N, "rank": p, "columns": [[...], ...]} with p columns of
/// length N. Throws ParseError on malformed documents and InvalidFrame when
/// the columns are not orthonormal within 1e-8.
OrthonormalFrame frame_from_json(const nlohmann::json& doc);
nlohmann::json frame_to_json(const OrthonormalFrame& frame);
OrthonormalFrame load_frame(const std::string& path);

/// {"n_points": N, "generators": [[1,2],[3]]}, 1-based.
IncreasingEvent event_from_json(const nlohmann::json& doc);
nlohmann::json event_to_json(const IncreasingEvent& event);
IncreasingEvent load_event(const std::string& path);

/// {"case", "angles_rad", "u", "v", "w", "w_tilde"}; families as lists of members.
nlohmann::json cs_to_json(const CSDecomposition& cs);

/// {name, lhs, rhs, diff, slack, tolerance, pass[, witness][, note]}
nlohmann::json report_to_json(const CheckReport& report);

/// Comma separated 1-based points, e.g. "1,3,4".
std::vector<int> parse_point_list(const std::string& text);

nlohmann::json read_json_file(const std::string& path);

}  // namespace bkdpp::io
