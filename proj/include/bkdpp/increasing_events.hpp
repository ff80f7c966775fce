#pragma once

#include <vector>

#include "bkdpp/point_set.hpp"

namespace bkdpp {

/// An increasing family of subsets of {1..N}, held as its antichain of
/// inclusion-minimal generators sorted by bitmask. The empty generator list
/// is the vacuous event; the empty set is never a generator.
class IncreasingEvent {
 public:
  /// Vacuous event on {1..n}.
  explicit IncreasingEvent(int n_points);

  /// Keeps the inclusion-minimal members of `raw`. Throws EmptyGenerator if
  /// raw contains the empty set and PointOutOfRange for points beyond n.
  static IncreasingEvent normalize_generators(int n_points, const std::vector<PointSet>& raw);

  /// The event "phi meets `points`": one singleton generator per point.
  static IncreasingEvent from_points(int n_points, PointSet points);

  int n_points() const noexcept { return n_points_; }
  const std::vector<PointSet>& generators() const noexcept { return generators_; }
  bool vacuous() const noexcept { return generators_.empty(); }
  bool singleton_generated() const noexcept;
  /// Union of all generators.
  PointSet support() const noexcept;

  /// True iff some generator is contained in s.
  bool contains(PointSet s) const noexcept;

  bool operator==(const IncreasingEvent&) const = default;

 private:
  IncreasingEvent(int n_points, std::vector<PointSet> antichain) : n_points_(n_points), generators_(std::move(antichain)) {}

  int n_points_;
  std::vector<PointSet> generators_;
};

/// k in A o B: there are generators A_i, B_j with A_i and B_j disjoint and
/// A_i u B_j contained in k.
bool disjoint_occurrence_contains(const IncreasingEvent& a, const IncreasingEvent& b, PointSet k);

/// Generated by the pairwise unions A_i u B_j.
IncreasingEvent intersect_events(const IncreasingEvent& a, const IncreasingEvent& b);

/// Generated by S(A) u S(B).
IncreasingEvent union_events(const IncreasingEvent& a, const IncreasingEvent& b);

/// The event generated by A and the single point x0. Throws
/// PointAlreadyGenerating if x0 already lies in a generator of A.
IncreasingEvent extend_by_point(const IncreasingEvent& a, int x0);

}  // namespace bkdpp
