#pragma once

#include <string_view>
#include <vector>

#include "bkdpp/exterior_algebra.hpp"
#include "bkdpp/point_set.hpp"
#include "bkdpp/projection_dpp.hpp"
#include "bkdpp/report.hpp"

namespace bkdpp {

/// Which block layout the decomposition of (E, R^N_J) takes, as a function
/// of n = |J|, p = dim E and N.
enum class CsCase { I, II, III, IV_i, IV_ii, IV_iii };

std::string_view to_string(CsCase c);
CsCase parse_cs_case(std::string_view s);

/// n < p: I if p + n < N, II if p + n > N, III if p + n = N.
/// n = p: IV(i) if 2p < N, IV(ii) if 2p > N, IV(iii) if 2p = N.
CsCase classify_case(int n, int p, int n_points);

/// CS decomposition of a p-dimensional subspace E of R^N relative to the
/// coordinate subspace R^N_J. Coordinates are split as (J part, rest), each
/// in increasing point order; u lives in R^n and v, w, w_tilde in R^{N-n}.
///
/// The first max(0, n + p - N) angles are forced zeros and carry no v member;
/// every other angle pairs u_i with v_{i - forced}.
struct CSDecomposition {
  CsCase case_tag = CsCase::I;
  int n_points = 0;
  int rank = 0;
  PointSet j;
  /// Ascending Jordan angles in [0, pi/2], radians.
  std::vector<double> angles;
  /// cos and sin of each angle. Sines come from the off-J block, not
  /// from sqrt(1 - cos^2).
  std::vector<double> cosines;
  std::vector<double> sines;
  VectorFamily u;
  VectorFamily v;
  VectorFamily w;
  VectorFamily w_tilde;

  int n() const noexcept { return j.size(); }
  int forced_zeros() const noexcept {
    const int f = n() + rank - n_points;
    return f > 0 ? f : 0;
  }
};

/// Throws TooManyPoints when |J| > p, RankDeficient for dependent input.
CSDecomposition compute_cs(const VectorFamily& e_basis, PointSet j);
CSDecomposition compute_cs(const OrthonormalFrame& frame, PointSet j);

/// Throws InconsistentCase when the family sizes or the tag disagree with (n, p, N).
void validate(const CSDecomposition& cs);

struct ReconstructedBases {
  VectorFamily z;       ///< p vectors spanning E
  VectorFamily z_perp;  ///< N - p vectors spanning E^perp
};

/// Assembles z and z_perp from the block formulas, e.g.
///   z^i       = (u^i cos t_i,  v^i sin t_i)
///   z^{p+i}   = (u^i sin t_i, -v^i cos t_i)
///   z^{n+i}   = (0, w^i),   z^{p+n+i} = (0, w~^i)
/// with forced-zero angles contributing (u^i, 0) to z only.
ReconstructedBases reconstruct_bases(const CSDecomposition& cs);

struct CosSinProducts {
  double cos_sq;  ///< prod cos^2(theta_i)
  double sin_sq;  ///< prod sin^2(theta_i)
};

CosSinProducts cos_sin_products(const CSDecomposition& cs);

/// P(J in phi) = prod cos^2 and P(J in phi^c) = prod sin^2. The second
/// check is only emitted when |J| <= N - p.
std::vector<CheckReport> verify_prop1_probabilities(const OrthonormalFrame& frame, PointSet j,
                                                    double tolerance = 1e-9);

/// Places a J-block and an off-J block back into R^N in original point order.
Vector embed_blocks(PointSet j, int n_points, const Vector& j_part, const Vector& rest_part);

}  // namespace bkdpp
