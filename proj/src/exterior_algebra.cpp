#include "bkdpp/exterior_algebra.hpp"

#include <cmath>
#include <string>

#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

constexpr double kRankTolerance = 1e-8;

void require_finite(const Matrix& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::DomainError, "vector family contains non-finite entries");
  }
}

Matrix drop_row_col(const Matrix& m, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index n = m.rows();
  Matrix out(n - 1, m.cols() - 1);
  for (Eigen::Index i = 0, oi = 0; i < n; ++i) {
    if (i == row) continue;
    for (Eigen::Index j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

// Two passes of modified Gram-Schmidt of v against the columns of q.
Vector project_out(const Matrix& q, Eigen::Index count, Vector v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < count; ++c) {
      v -= q.col(c).dot(v) * q.col(c);
    }
  }
  return v;
}

}  // namespace

VectorFamily::VectorFamily(Eigen::Index dim) : data_(dim, 0) {}

VectorFamily::VectorFamily(Matrix columns) : data_(std::move(columns)) { require_finite(data_); }

VectorFamily::VectorFamily(const std::vector<Vector>& members) {
  if (members.empty()) return;
  const Eigen::Index dim = members.front().size();
  data_.resize(dim, static_cast<Eigen::Index>(members.size()));
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "family members must share one dimension");
    }
    data_.col(static_cast<Eigen::Index>(i)) = members[i];
  }
  require_finite(data_);
}

void VectorFamily::push_back(const Vector& v) {
  if (data_.cols() > 0 && v.size() != data_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "family members must share one dimension");
  }
  if (!v.allFinite()) throw Error(ErrorCode::DomainError, "non-finite vector");
  if (data_.cols() == 0) data_.resize(v.size(), 0);
  data_.conservativeResize(Eigen::NoChange, data_.cols() + 1);
  data_.col(data_.cols() - 1) = v;
}

VectorFamily VectorFamily::concat(const VectorFamily& other) const {
  if (other.empty()) return *this;
  if (empty() && dim() == 0) return other;
  if (other.dim() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot concatenate families of different dimension");
  }
  Matrix m(dim(), size() + other.size());
  m << data_, other.data_;
  return VectorFamily(std::move(m));
}

Matrix gram_matrix(const VectorFamily& a, const VectorFamily& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "gram_matrix needs families of equal length and dimension (got " +
                    std::to_string(a.size()) + "x" + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.size()) + "x" + std::to_string(b.dim()) + ")");
  }
  return a.matrix().transpose() * b.matrix();
}

double determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

double wedge_inner(const VectorFamily& a, const VectorFamily& b) {
  if (a.size() == 0) throw Error(ErrorCode::DimensionMismatch, "wedge of an empty family");
  return determinant(gram_matrix(a, b));
}

double wedge_norm_sq(const VectorFamily& a) {
  if (a.size() == 0) throw Error(ErrorCode::DimensionMismatch, "wedge of an empty family");
  if (a.size() > a.dim()) return 0.0;
  // prod R_ii^2 from Householder QR equals det(Gram) but does not square the
  // condition number of the family.
  const Eigen::HouseholderQR<Matrix> qr(a.matrix());
  double out = 1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double r = qr.matrixQR()(i, i);
    out *= r * r;
  }
  return out;
}

VectorFamily leave_one_out_wedges(const VectorFamily& v) {
  const Eigen::Index n = v.size();
  if (n < 2 || v.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "leave_one_out_wedges needs n >= 2 vectors in R^n (got " + std::to_string(n) +
                    " vectors in R^" + std::to_string(v.dim()) + ")");
  }
  const Matrix rows = v.matrix().transpose();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(j, i) = determinant(drop_row_col(rows, i, j));
    }
  }
  return VectorFamily(std::move(out));
}

VectorFamily orthonormalize(const VectorFamily& a) {
  Matrix q(a.dim(), a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Vector original = a[k];
    const double norm0 = original.norm();
    Vector v = project_out(q, k, original);
    const double norm = v.norm();
    if (norm0 == 0.0 || norm < kRankTolerance * norm0) {
      throw Error(ErrorCode::RankDeficient,
                  "member " + std::to_string(k) + " is linearly dependent on its predecessors");
    }
    q.col(k) = v / norm;
  }
  return VectorFamily(std::move(q));
}

VectorFamily complete_orthonormal(const VectorFamily& a, Eigen::Index target) {
  const Eigen::Index dim = a.dim();
  if (target > dim) throw Error(ErrorCode::DimensionMismatch, "cannot complete beyond the ambient dimension");
  Matrix q(dim, target);
  q.leftCols(a.size()) = a.matrix();
  for (Eigen::Index k = a.size(); k < target; ++k) {
    Vector best;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      Vector r = project_out(q, k, Vector::Unit(dim, j));
      const double nr = r.norm();
      if (nr > best_norm + 1e-12) {
        best_norm = nr;
        best = std::move(r);
      }
    }
    q.col(k) = best / best_norm;
  }
  return VectorFamily(std::move(q));
}

double orthonormality_defect(const VectorFamily& a) {
  if (a.empty()) return 0.0;
  const Matrix g = gram_matrix(a, a);
  return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

}  // namespace bkdpp
