#include "bkdpp/cs_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "bkdpp/errors.hpp"

namespace bkdpp {

namespace {

// 1 - cos(theta) threshold for the structurally forced zero angles.
constexpr double kForcedZeroTolerance = 1e-9;
// Below this sine the v direction is not recoverable from the data and is
// chosen by orthonormal completion instead.
constexpr double kSineFloor = 1e-10;

Matrix select_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  return out;
}

Vector orthogonalize_against(const Matrix& basis, Eigen::Index count, Vector v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < count; ++c) v -= basis.col(c).dot(v) * basis.col(c);
  }
  return v;
}

}  // namespace

std::string_view to_string(CsCase c) {
  switch (c) {
    case CsCase::I: return "I";
    case CsCase::II: return "II";
    case CsCase::III: return "III";
    case CsCase::IV_i: return "IV_i";
    case CsCase::IV_ii: return "IV_ii";
    case CsCase::IV_iii: return "IV_iii";
  }
  return "?";
}

CsCase parse_cs_case(std::string_view s) {
  for (CsCase c : {CsCase::I, CsCase::II, CsCase::III, CsCase::IV_i, CsCase::IV_ii, CsCase::IV_iii}) {
    if (to_string(c) == s) return c;
  }
  throw Error(ErrorCode::ParseError, "unknown CS case tag '" + std::string(s) + "'");
}

CsCase classify_case(int n, int p, int n_points) {
  if (n < 1 || n > p) throw Error(ErrorCode::TooManyPoints, "case arithmetic needs 1 <= n <= p");
  if (n < p) {
    if (p + n < n_points) return CsCase::I;
    if (p + n > n_points) return CsCase::II;
    return CsCase::III;
  }
  if (2 * p < n_points) return CsCase::IV_i;
  if (2 * p > n_points) return CsCase::IV_ii;
  return CsCase::IV_iii;
}

Vector embed_blocks(PointSet j, int n_points, const Vector& j_part, const Vector& rest_part) {
  Vector out = Vector::Zero(n_points);
  Eigen::Index a = 0;
  Eigen::Index b = 0;
  for (int i = 1; i <= n_points; ++i) {
    out(i - 1) = j.contains(i) ? j_part(a++) : rest_part(b++);
  }
  return out;
}

CSDecomposition compute_cs(const VectorFamily& e_basis, PointSet j) {
  const int n_points = static_cast<int>(e_basis.dim());
  const int p = static_cast<int>(e_basis.size());
  const int n = j.size();
  if (j.max_point() > n_points) {
    throw Error(ErrorCode::PointOutOfRange, "J = " + j.to_string() + " is outside {1.." + std::to_string(n_points) + "}");
  }
  if (n > p) {
    throw Error(ErrorCode::TooManyPoints,
                "|J| = " + std::to_string(n) + " exceeds dim E = " + std::to_string(p));
  }
  if (n == 0) throw Error(ErrorCode::DomainError, "J must be nonempty");

  const Matrix z = orthonormalize(e_basis).matrix();
  const std::vector<int> j_rows = j.indices();
  const std::vector<int> rest_rows = j.complement(n_points).indices();
  const Matrix z_j = select_rows(z, j_rows);
  const Matrix z_rest = select_rows(z, rest_rows);

  Eigen::JacobiSVD<Matrix> svd(z_j, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = svd.matrixU();
  Matrix q = svd.matrixV();
  const Vector sigma = svd.singularValues();
  Matrix rest_q = z_rest * q;

  CSDecomposition cs;
  cs.n_points = n_points;
  cs.rank = p;
  cs.j = j;
  cs.case_tag = classify_case(n, p, n_points);
  const int forced = cs.forced_zeros();

  std::vector<double> cosines(static_cast<std::size_t>(n));
  std::vector<double> sines(static_cast<std::size_t>(n));
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double c = std::clamp(sigma(i), 1e-300, 1.0);
    double s = std::min(1.0, rest_q.col(i).norm());
    if (i < forced) {
      if (1.0 - c > kForcedZeroTolerance) {
        throw Error(ErrorCode::InconsistentCase, "forced zero angle " + std::to_string(i + 1) +
                                                     " has 1 - cos = " + std::to_string(1.0 - c));
      }
      c = 1.0;
      s = 0.0;
    }
    cosines[static_cast<std::size_t>(i)] = c;
    sines[static_cast<std::size_t>(i)] = s;
    angles[static_cast<std::size_t>(i)] = std::atan2(s, c);
  }

  // Ascending angles; stable so exact ties keep the SVD order.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return angles[static_cast<std::size_t>(a)] < angles[static_cast<std::size_t>(b)];
  });
  {
    Matrix u_sorted(n, n);
    Matrix rest_sorted = rest_q;
    for (int k = 0; k < n; ++k) {
      const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(k)]);
      u_sorted.col(k) = u.col(static_cast<Eigen::Index>(src));
      rest_sorted.col(k) = rest_q.col(static_cast<Eigen::Index>(src));
      cs.angles.push_back(angles[src]);
      cs.cosines.push_back(cosines[src]);
      cs.sines.push_back(sines[src]);
    }
    u = std::move(u_sorted);
    rest_q = std::move(rest_sorted);
  }
  cs.u = VectorFamily(u);

  // Off-J block: columns n..p-1 of rest_q are w (unit norm), columns i < n
  // are v_i * sin(theta_i). Orthonormalize w first, then v by decreasing
  // sine; tiny sines are completed afterwards.
  const int rest_dim = n_points - n;
  const int n_w = p - n;
  const int n_v = n - forced;
  Matrix basis(rest_dim, n_w + n_v);
  for (int k = 0; k < n_w; ++k) {
    Vector col = orthogonalize_against(basis, k, rest_q.col(n + k));
    basis.col(k) = col / col.norm();
  }
  std::vector<int> v_order;
  for (int i = forced; i < n; ++i) v_order.push_back(i);
  std::stable_sort(v_order.begin(), v_order.end(), [&](int a, int b) {
    return cs.sines[static_cast<std::size_t>(a)] > cs.sines[static_cast<std::size_t>(b)];
  });
  Matrix v(rest_dim, n_v);
  Eigen::Index filled = n_w;
  std::vector<int> deferred;
  for (int i : v_order) {
    if (cs.sines[static_cast<std::size_t>(i)] <= kSineFloor) {
      deferred.push_back(i);
      continue;
    }
    Vector col = orthogonalize_against(basis, filled, rest_q.col(i));
    col /= col.norm();
    basis.col(filled++) = col;
    v.col(i - forced) = col;
  }
  if (!deferred.empty()) {
    std::sort(deferred.begin(), deferred.end());
    const VectorFamily completed =
        complete_orthonormal(VectorFamily(Matrix(basis.leftCols(filled))), filled + static_cast<Eigen::Index>(deferred.size()));
    for (int i : deferred) {
      basis.col(filled) = completed.matrix().col(filled);
      v.col(i - forced) = basis.col(filled);
      ++filled;
    }
  }
  cs.w = VectorFamily(Matrix(basis.leftCols(n_w)));
  cs.v = VectorFamily(std::move(v));
  if (cs.v.dim() == 0) cs.v = VectorFamily(static_cast<Eigen::Index>(rest_dim));
  if (cs.w.dim() == 0) cs.w = VectorFamily(static_cast<Eigen::Index>(rest_dim));

  const VectorFamily all = complete_orthonormal(VectorFamily(basis), rest_dim);
  cs.w_tilde = VectorFamily(Matrix(all.matrix().rightCols(rest_dim - n_w - n_v)));
  if (cs.w_tilde.dim() == 0) cs.w_tilde = VectorFamily(static_cast<Eigen::Index>(rest_dim));
  return cs;
}

CSDecomposition compute_cs(const OrthonormalFrame& frame, PointSet j) {
  return compute_cs(frame.column_family(), j);
}

void validate(const CSDecomposition& cs) {
  const int n = cs.n();
  const int p = cs.rank;
  const int big_n = cs.n_points;
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InconsistentCase, msg); };
  if (n < 1 || n > p || p > big_n) fail("need 1 <= n <= p <= N");
  if (cs.case_tag != classify_case(n, p, big_n)) {
    fail("case tag " + std::string(to_string(cs.case_tag)) + " does not match n=" + std::to_string(n) +
         ", p=" + std::to_string(p) + ", N=" + std::to_string(big_n));
  }
  const auto nn = static_cast<std::size_t>(n);
  if (cs.angles.size() != nn || cs.cosines.size() != nn || cs.sines.size() != nn) fail("need n angles");
  const int f = cs.forced_zeros();
  const int rest = big_n - n;
  auto check_family = [&](const VectorFamily& fam, Eigen::Index dim, Eigen::Index count, const char* name) {
    if (fam.size() != count || (count > 0 && fam.dim() != dim)) {
      fail(std::string(name) + " family has " + std::to_string(fam.size()) + " members of dim " +
           std::to_string(fam.dim()) + ", expected " + std::to_string(count) + " of dim " + std::to_string(dim));
    }
  };
  check_family(cs.u, n, n, "u");
  check_family(cs.v, rest, n - f, "v");
  check_family(cs.w, rest, p - n, "w");
  check_family(cs.w_tilde, rest, big_n - p - n + f, "w_tilde");
  for (int i = 0; i < n; ++i) {
    const double a = cs.angles[static_cast<std::size_t>(i)];
    if (!(a >= 0.0 && a <= std::numbers::pi / 2 + 1e-12)) fail("angle out of [0, pi/2]");
    if (i > 0 && a < cs.angles[static_cast<std::size_t>(i - 1)]) fail("angles must ascend");
    if (i < f && a != 0.0) fail("forced zero angle is nonzero");
  }
}

ReconstructedBases reconstruct_bases(const CSDecomposition& cs) {
  validate(cs);
  const int n = cs.n();
  const int f = cs.forced_zeros();
  const int big_n = cs.n_points;
  const Vector zero_j = Vector::Zero(n);
  const Vector zero_rest = Vector::Zero(big_n - n);

  ReconstructedBases out{VectorFamily(static_cast<Eigen::Index>(big_n)), VectorFamily(static_cast<Eigen::Index>(big_n))};
  for (int i = 0; i < f; ++i) out.z.push_back(embed_blocks(cs.j, big_n, cs.u[i], zero_rest));
  for (int i = f; i < n; ++i) {
    const double c = cs.cosines[static_cast<std::size_t>(i)];
    const double s = cs.sines[static_cast<std::size_t>(i)];
    out.z.push_back(embed_blocks(cs.j, big_n, cs.u[i] * c, cs.v[i - f] * s));
    out.z_perp.push_back(embed_blocks(cs.j, big_n, cs.u[i] * s, -cs.v[i - f] * c));
  }
  for (Eigen::Index k = 0; k < cs.w.size(); ++k) out.z.push_back(embed_blocks(cs.j, big_n, zero_j, cs.w[k]));
  for (Eigen::Index k = 0; k < cs.w_tilde.size(); ++k) {
    out.z_perp.push_back(embed_blocks(cs.j, big_n, zero_j, cs.w_tilde[k]));
  }
  return out;
}

CosSinProducts cos_sin_products(const CSDecomposition& cs) {
  CosSinProducts out{1.0, 1.0};
  for (std::size_t i = 0; i < cs.cosines.size(); ++i) {
    out.cos_sq *= cs.cosines[i] * cs.cosines[i];
    out.sin_sq *= cs.sines[i] * cs.sines[i];
  }
  return out;
}

std::vector<CheckReport> verify_prop1_probabilities(const OrthonormalFrame& frame, PointSet j, double tolerance) {
  const CSDecomposition cs = compute_cs(frame, j);
  const CosSinProducts prod = cos_sin_products(cs);
  const std::string witness = "J=" + j.to_string();
  std::vector<CheckReport> out;
  out.push_back(identity_report("prop1.inclusion_cos_product", prod.cos_sq, inclusion_probability(ProjectionDPP(frame), j),
                                tolerance, witness));
  if (j.size() <= frame.n_points() - frame.rank()) {
    const ProjectionDPP complement(complement_frame(frame));
    out.push_back(identity_report("prop1.exclusion_sin_product", prod.sin_sq, inclusion_probability(complement, j), tolerance, witness));
  }
  return out;
}

}  // namespace bkdpp
