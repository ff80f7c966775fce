#pragma once

#include <functional>
#include <vector>

#include "bkdpp/exterior_algebra.hpp"
#include "bkdpp/point_set.hpp"
#include "bkdpp/random.hpp"

namespace bkdpp {

/// Hard cap on the ground-set size for anything that enumerates subsets.
inline constexpr int kMaxEnumerationPoints = 20;

/// N x p matrix with orthonormal columns z^1..z^p. Row i is the feature
/// vector z_i of point i.
class OrthonormalFrame {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  /// Throws InvalidFrame unless 1 <= p <= N <= 64 and the columns are
  /// orthonormal within `tolerance`.
  explicit OrthonormalFrame(Matrix columns, double tolerance = kDefaultTolerance);

  /// Orthonormalizes an arbitrary spanning family of R^N vectors.
  static OrthonormalFrame from_spanning(const VectorFamily& family);

  int n_points() const noexcept { return static_cast<int>(columns_.rows()); }
  int rank() const noexcept { return static_cast<int>(columns_.cols()); }
  const Matrix& columns() const noexcept { return columns_; }
  VectorFamily column_family() const { return VectorFamily(columns_); }

  /// z_i for a 1-based point i.
  Vector row(int point) const;
  /// Rows of the given points, in increasing point order.
  Matrix rows(PointSet points) const;

 private:
  Matrix columns_;
};

/// The projection determinantal process induced by a frame.
class ProjectionDPP {
 public:
  explicit ProjectionDPP(OrthonormalFrame frame) : frame_(std::move(frame)) {}

  const OrthonormalFrame& frame() const noexcept { return frame_; }
  int n_points() const noexcept { return frame_.n_points(); }
  int rank() const noexcept { return frame_.rank(); }

 private:
  OrthonormalFrame frame_;
};

/// P(J subset of phi) = ||wedge_{i in J} z_i||^2.
double inclusion_probability(const ProjectionDPP& dpp, PointSet j);

/// P(phi = S) = det(rows S)^2 for |S| = p.
double elementary_probability(const ProjectionDPP& dpp, PointSet s);

struct LawEntry {
  PointSet outcome;
  double probability;
};

/// The full law of a projection DPP: every p-subset with its elementary
/// probability, in increasing bitmask order. All sums run in that order.
class ExactLaw {
 public:
  ExactLaw(int n_points, std::vector<LawEntry> entries) : n_points_(n_points), entries_(std::move(entries)) {}

  int n_points() const noexcept { return n_points_; }
  const std::vector<LawEntry>& entries() const noexcept { return entries_; }

  template <typename Pred>
  double probability(Pred&& pred) const {
    double total = 0.0;
    for (const auto& e : entries_) {
      if (pred(e.outcome)) total += e.probability;
    }
    return total;
  }

  double total() const;
  /// P(J subset of phi).
  double includes(PointSet j) const;
  /// P(J subset of the complement of phi).
  double avoids(PointSet j) const;

 private:
  int n_points_;
  std::vector<LawEntry> entries_;
};

/// Throws EnumerationTooLarge for N > 20.
ExactLaw exact_law(const ProjectionDPP& dpp);

using SubsetPredicate = std::function<bool(PointSet)>;

/// Brute-force probability of an arbitrary event.
double event_probability(const ProjectionDPP& dpp, const SubsetPredicate& predicate);

/// Orthonormal basis of the orthogonal complement of span(frame); the induced
/// process is the complement of the original. Throws FullRank when p = N.
OrthonormalFrame complement_frame(const OrthonormalFrame& frame);

/// Chain-rule sampler: pick point i with probability ||y_i||^2 / (p - t),
/// project every row off the chosen one, repeat p times.
PointSet sample(const ProjectionDPP& dpp, Rng& rng);

/// True iff frame * rotation induces the same elementary probabilities within
/// 1e-10. Throws NotOrthogonal if the rotation is not orthogonal within 1e-10.
bool basis_invariance_check(const OrthonormalFrame& frame, const Matrix& rotation);

/// Orthonormalized N x p Gaussian matrix.
OrthonormalFrame random_frame(Rng& rng, int n_points, int rank);

/// Orthonormalized k x k Gaussian matrix.
Matrix random_rotation(Rng& rng, int k);

}  // namespace bkdpp
