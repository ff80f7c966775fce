#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bkdpp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Ordered list of vectors sharing one dimension. Members are stored as the
/// columns of a dense matrix; all entries are finite.
class VectorFamily {
 public:
  VectorFamily() = default;
  /// Empty family whose (future) members live in R^dim.
  explicit VectorFamily(Eigen::Index dim);
  /// Columns become the members.
  explicit VectorFamily(Matrix columns);
  explicit VectorFamily(const std::vector<Vector>& members);

  static VectorFamily from_rows(const Matrix& rows) { return VectorFamily(Matrix(rows.transpose())); }

  Eigen::Index size() const noexcept { return data_.cols(); }
  Eigen::Index dim() const noexcept { return data_.rows(); }
  bool empty() const noexcept { return data_.cols() == 0; }

  Vector operator[](Eigen::Index i) const { return data_.col(i); }
  const Matrix& matrix() const noexcept { return data_; }

  void push_back(const Vector& v);
  VectorFamily concat(const VectorFamily& other) const;

 private:
  Matrix data_;
};

/// Entry (i,j) is <a_i, b_j>.
Matrix gram_matrix(const VectorFamily& a, const VectorFamily& b);

/// LU with partial pivoting; the empty matrix has determinant 1.
double determinant(const Matrix& m);

/// <a_1 ^ ... ^ a_k, b_1 ^ ... ^ b_k> = det(gram_matrix(a, b)).
double wedge_inner(const VectorFamily& a, const VectorFamily& b);

/// ||a_1 ^ ... ^ a_k||^2 = det(Gram), computed as prod R_ii^2 of a Householder
/// QR so the condition number is not squared; 0 when k > dim.
double wedge_norm_sq(const VectorFamily& a);

/// For n vectors in R^n, returns the n leave-one-out wedges
/// v~_i = wedge_{j != i} v_j in Hodge-dual coordinates: coordinate j of v~_i
/// is the minor of the n x n matrix (rows v_k) with row i and column j
/// deleted. No cofactor signs are applied.
VectorFamily leave_one_out_wedges(const VectorFamily& v);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
/// RankDeficient when a residual drops below 1e-8 of the input norm.
VectorFamily orthonormalize(const VectorFamily& a);

/// Extends an orthonormal family of vectors in R^dim to `target` members,
/// adding standard basis directions in order of largest residual.
VectorFamily complete_orthonormal(const VectorFamily& a, Eigen::Index target);

/// max |gram(a,a) - I|.
double orthonormality_defect(const VectorFamily& a);

}  // namespace bkdpp
