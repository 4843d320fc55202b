#pragma once

#include <cstddef>
#include <vector>

#include "cpjoint/dataset.hpp"
#include "cpjoint/model.hpp"

namespace cpjoint {

/// Covariance-shift U-statistics V_n(tau), tau = 4..n-4, and the weighted aggregate
///   V_n = sum_tau tau (n - tau) / n * V_n(tau).
struct CovStatResult {
    StatCurve per_tau;
    double aggregate = 0.0;
};

/// Unnormalized Gram sums over distinct indices at one split. L = {1..tau}, R = {tau+1..n}.
/// g = x_i' x_j. "Sum*" ranges over pairwise-distinct index tuples.
struct CovSplitSums {
    struct Within {
        double pair_sq = 0.0;  ///< Sum*_{i,j} g_ij^2
        double path = 0.0;     ///< Sum*_{i,j,k} g_ij g_jk
        double quad = 0.0;     ///< Sum*_{i,j,k,l} g_ij g_kl
    };
    Within left;
    Within right;
    double cross_sq = 0.0;         ///< Sum_{i in L, j in R} g_ij^2
    double cross_path_right = 0.0; ///< Sum*_{i,k in L} Sum_{j in R} g_ij g_jk
    double cross_path_left = 0.0;  ///< Sum*_{i,k in R} Sum_{j in L} g_ij g_jk
    double cross_quad = 0.0;       ///< Sum*_{i,k in L} Sum*_{j,l in R} g_ij g_kl
};

/// Combines the sums of one split into V_n(tau) = A + B - 2C.
double cov_stat_from_sums(const CovSplitSums& s, std::size_t n, std::size_t tau);

/// Split sums for every tau = 4..n-4 from a single forward sweep over the Gram matrix.
/// Costs O(n^2) given g.
std::vector<CovSplitSums> cov_split_sums(const GramMatrix& g);

/// Throws Error{NTooSmall} when n < 8.
CovStatResult cov_stat_curve(ObservationView data, const GramMatrix& g);

}  // namespace cpjoint
