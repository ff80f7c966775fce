#include "bkdpp/projection_dpp.hpp"

#include <cmath>
#include <string>

#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

void check_points(const OrthonormalFrame& frame, PointSet s) {
  if (s.max_point() > frame.n_points()) {
    throw Error(ErrorCode::PointOutOfRange, "point set " + s.to_string() + " exceeds ground set {1.." +
                                                std::to_string(frame.n_points()) + "}");
  }
}

void check_enumerable(int n) {
  if (n > kMaxEnumerationPoints) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "exact enumeration needs N <= " + std::to_string(kMaxEnumerationPoints) + " (got " +
                    std::to_string(n) + ")");
  }
}

}  // namespace

OrthonormalFrame::OrthonormalFrame(Matrix columns, double tolerance) : columns_(std::move(columns)) {
  const auto n = columns_.rows();
  const auto p = columns_.cols();
  if (p < 1 || n < p || n > kMaxGroundSize) {
    throw Error(ErrorCode::InvalidFrame, "frame must satisfy 1 <= p <= N <= 64 (got N=" + std::to_string(n) +
                                             ", p=" + std::to_string(p) + ")");
  }
  if (!columns_.allFinite()) throw Error(ErrorCode::InvalidFrame, "frame has non-finite entries");
  const double defect = orthonormality_defect(VectorFamily(columns_));
  if (!(defect <= tolerance)) {
    throw Error(ErrorCode::InvalidFrame,
                "frame columns are not orthonormal (max |Z^T Z - I| = " + std::to_string(defect) + ")");
  }
}

OrthonormalFrame OrthonormalFrame::from_spanning(const VectorFamily& family) {
  return OrthonormalFrame(orthonormalize(family).matrix());
}

Vector OrthonormalFrame::row(int point) const {
  if (point < 1 || point > n_points()) {
    throw Error(ErrorCode::PointOutOfRange, "point " + std::to_string(point) + " outside {1.." +
                                                std::to_string(n_points()) + "}");
  }
  return columns_.row(point - 1).transpose();
}

Matrix OrthonormalFrame::rows(PointSet points) const {
  check_points(*this, points);
  const auto idx = points.indices();
  Matrix out(static_cast<Eigen::Index>(idx.size()), columns_.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = columns_.row(idx[r]);
  return out;
}

double ExactLaw::total() const {
  return probability([](PointSet) { return true; });
}

double ExactLaw::includes(PointSet j) const {
  return probability([j](PointSet s) { return j.subset_of(s); });
}

double ExactLaw::avoids(PointSet j) const {
  return probability([j](PointSet s) { return j.disjoint(s); });
}

double inclusion_probability(const ProjectionDPP& dpp, PointSet j) {
  check_points(dpp.frame(), j);
  if (j.empty()) return 1.0;
  if (j.size() > dpp.rank()) return 0.0;
  return wedge_norm_sq(VectorFamily::from_rows(dpp.frame().rows(j)));
}

double elementary_probability(const ProjectionDPP& dpp, PointSet s) {
  check_points(dpp.frame(), s);
  if (s.size() != dpp.rank()) {
    throw Error(ErrorCode::WrongCardinality, "elementary probability needs |S| = p = " +
                                                 std::to_string(dpp.rank()) + " (got " + s.to_string() + ")");
  }
  const double d = determinant(dpp.frame().rows(s));
  return d * d;
}

ExactLaw exact_law(const ProjectionDPP& dpp) {
  check_enumerable(dpp.n_points());
  std::vector<LawEntry> entries;
  for_each_subset_of_size(dpp.n_points(), dpp.rank(), [&](PointSet s) {
    const double d = determinant(dpp.frame().rows(s));
    entries.push_back({s, d * d});
  });
  return ExactLaw(dpp.n_points(), std::move(entries));
}

double event_probability(const ProjectionDPP& dpp, const SubsetPredicate& predicate) {
  return exact_law(dpp).probability(predicate);
}

OrthonormalFrame complement_frame(const OrthonormalFrame& frame) {
  const int n = frame.n_points();
  const int p = frame.rank();
  if (p == n) throw Error(ErrorCode::FullRank, "a rank-N frame has an empty complement");
  // Completing Z with standard directions orthonormalizes the column space
  // of I - Z Z^T, picking the column with largest residual at each step.
  const VectorFamily full = complete_orthonormal(frame.column_family(), n);
  return OrthonormalFrame(full.matrix().rightCols(n - p));
}

PointSet sample(const ProjectionDPP& dpp, Rng& rng) {
  Matrix y = dpp.frame().columns();
  const int n = dpp.n_points();
  PointSet chosen;
  for (int t = 0; t < dpp.rank(); ++t) {
    Vector w = y.rowwise().squaredNorm();
    for (int i : chosen.indices()) w(i) = 0.0;
    const double total = w.sum();
    const double target = rng.uniform() * total;
    int pick = -1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      if (w(i) <= 0.0) continue;
      acc += w(i);
      pick = i;
      if (target < acc) break;
    }
    chosen = chosen.with(pick + 1);
    const Vector e = y.row(pick).transpose() / std::sqrt(w(pick));
    y -= (y * e) * e.transpose();
  }
  return chosen;
}

bool basis_invariance_check(const OrthonormalFrame& frame, const Matrix& rotation) {
  const int p = frame.rank();
  if (rotation.rows() != p || rotation.cols() != p) {
    throw Error(ErrorCode::DimensionMismatch, "rotation must be p x p");
  }
  if (orthonormality_defect(VectorFamily(rotation)) > 1e-10) {
    throw Error(ErrorCode::NotOrthogonal, "rotation is not orthogonal within 1e-10");
  }
  const ProjectionDPP original(frame);
  const ProjectionDPP rotated(OrthonormalFrame(frame.columns() * rotation, 1e-9));
  const ExactLaw a = exact_law(original);
  const ExactLaw b = exact_law(rotated);
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    if (std::abs(a.entries()[i].probability - b.entries()[i].probability) > 1e-10) return false;
  }
  return true;
}

OrthonormalFrame random_frame(Rng& rng, int n_points, int rank) {
  return OrthonormalFrame::from_spanning(VectorFamily(rng.gaussian_matrix(n_points, rank)));
}

Matrix random_rotation(Rng& rng, int k) {
  return orthonormalize(VectorFamily(rng.gaussian_matrix(k, k))).matrix();
}

}  // namespace bkdpp
