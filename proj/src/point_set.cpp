#include "bkdpp/point_set.hpp"

#include "bkdpp/errors.hpp"

namespace bkdpp {

PointSet PointSet::of(const std::vector<int>& points) {
  PointSet s;
  for (int p : points) {
    if (p < 1 || p > kMaxGroundSize) {
      throw Error(ErrorCode::PointOutOfRange, "point " + std::to_string(p) + " is not a valid 1-based index");
    }
    s = s.with(p);
  }
  return s;
}

std::vector<int> PointSet::points() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

std::vector<int> PointSet::indices() const {
  std::vector<int> out = points();
  for (int& i : out) --i;
  return out;
}

std::string PointSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int p : points()) {
    if (!first) out += ",";
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

}  // namespace bkdpp
