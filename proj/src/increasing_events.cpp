#include "bkdpp/increasing_events.hpp"

#include <algorithm>
#include <string>

#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

void require_same_ground(const IncreasingEvent& a, const IncreasingEvent& b) {
  if (a.n_points() != b.n_points()) {
    throw Error(ErrorCode::GroundSizeMismatch, "events live on ground sets of size " + std::to_string(a.n_points()) +
                                                   " and " + std::to_string(b.n_points()));
  }
}

}  // namespace

IncreasingEvent::IncreasingEvent(int n_points) : n_points_(n_points) {
  if (n_points < 1 || n_points > kMaxGroundSize) {
    throw Error(ErrorCode::DomainError, "ground size must be in 1..64");
  }
}

IncreasingEvent IncreasingEvent::normalize_generators(int n_points, const std::vector<PointSet>& raw) {
  IncreasingEvent checked(n_points);
  std::vector<PointSet> sorted = raw;
  for (PointSet g : sorted) {
    if (g.empty()) throw Error(ErrorCode::EmptyGenerator, "the empty set cannot generate an increasing event");
    if (g.max_point() > n_points) {
      throw Error(ErrorCode::PointOutOfRange, "generator " + g.to_string() + " is outside {1.." +
                                                  std::to_string(n_points) + "}");
    }
  }
  // Subsets have no more bits set, so sorting by size first lets every kept
  // generator be tested only against earlier (smaller) ones.
  std::sort(sorted.begin(), sorted.end(), [](PointSet x, PointSet y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  std::vector<PointSet> kept;
  for (PointSet g : sorted) {
    const bool absorbed = std::any_of(kept.begin(), kept.end(), [g](PointSet k) { return k.subset_of(g); });
    if (!absorbed) kept.push_back(g);
  }
  std::sort(kept.begin(), kept.end());
  return IncreasingEvent(checked.n_points_, std::move(kept));
}

IncreasingEvent IncreasingEvent::from_points(int n_points, PointSet points) {
  std::vector<PointSet> gens;
  for (int x : points.points()) gens.push_back(PointSet{}.with(x));
  return normalize_generators(n_points, gens);
}

bool IncreasingEvent::singleton_generated() const noexcept {
  return std::all_of(generators_.begin(), generators_.end(), [](PointSet g) { return g.size() == 1; });
}

PointSet IncreasingEvent::support() const noexcept {
  PointSet s;
  for (PointSet g : generators_) s = s | g;
  return s;
}

bool IncreasingEvent::contains(PointSet s) const noexcept {
  return std::any_of(generators_.begin(), generators_.end(), [s](PointSet g) { return g.subset_of(s); });
}

bool disjoint_occurrence_contains(const IncreasingEvent& a, const IncreasingEvent& b, PointSet k) {
  require_same_ground(a, b);
  for (PointSet ga : a.generators()) {
    if (!ga.subset_of(k)) continue;
    for (PointSet gb : b.generators()) {
      if (gb.subset_of(k) && ga.disjoint(gb)) return true;
    }
  }
  return false;
}

IncreasingEvent intersect_events(const IncreasingEvent& a, const IncreasingEvent& b) {
  require_same_ground(a, b);
  std::vector<PointSet> unions;
  for (PointSet ga : a.generators())
    for (PointSet gb : b.generators()) unions.push_back(ga | gb);
  return IncreasingEvent::normalize_generators(a.n_points(), unions);
}

IncreasingEvent union_events(const IncreasingEvent& a, const IncreasingEvent& b) {
  require_same_ground(a, b);
  std::vector<PointSet> all = a.generators();
  all.insert(all.end(), b.generators().begin(), b.generators().end());
  return IncreasingEvent::normalize_generators(a.n_points(), all);
}

IncreasingEvent extend_by_point(const IncreasingEvent& a, int x0) {
  if (x0 < 1 || x0 > a.n_points()) {
    throw Error(ErrorCode::PointOutOfRange, "x0 = " + std::to_string(x0) + " is outside the ground set");
  }
  if (a.support().contains(x0)) {
    throw Error(ErrorCode::PointAlreadyGenerating, "x0 = " + std::to_string(x0) + " already lies in a generator");
  }
  std::vector<PointSet> gens = a.generators();
  gens.push_back(PointSet{}.with(x0));
  return IncreasingEvent::normalize_generators(a.n_points(), gens);
}

}  // namespace bkdpp
