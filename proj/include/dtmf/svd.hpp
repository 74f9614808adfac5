#pragma once

#include <cstddef>
#include <vector>

#include "dtmf/matrix.hpp"

namespace dtmf {

// Relative threshold deciding which singular values count toward the
// numerical rank: sigma[i] > kRankTol * sigma[0].
inline constexpr double kRankTol = 1e-10;

// Thin SVD m = u * diag(sigma) * v^T with p = min(rows, cols) columns.
//
// Columns of u and v are orthonormal, sigma is nonnegative and
// non-increasing. Sign convention: within each column of u the entry of
// largest magnitude is positive; the matching column of v is negated
// alongside so the product is unchanged.
struct SvdResult {
    DenseMatrix u;              // m x p
    std::vector<double> sigma;  // p, descending
    DenseMatrix v;              // n x p
    std::size_t effective_rank = 0;
};

SvdResult svd(const DenseMatrix& m);

// First k singular triplets. Throws RankOutOfRange unless 1 <= k <= p.
SvdResult truncate(const SvdResult& s, std::size_t k);

// sigma[i]^2 / sum_j sigma[j]^2 per dimension. All zeros for a zero matrix.
std::vector<double> explained_proportions(const SvdResult& s);

DenseMatrix reconstruct(const SvdResult& s);

}  // namespace dtmf
