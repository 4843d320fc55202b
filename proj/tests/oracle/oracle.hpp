#pragma once

// Brute-force reference implementations, written straight from the defining sums.
// They share no code with the library's fast paths and refuse to run at experiment scale.

#include <cstddef>

#include "cpjoint/cov_change.hpp"
#include "cpjoint/dataset.hpp"
#include "cpjoint/simulation.hpp"

namespace cpjoint::oracle {

inline constexpr std::size_t kMaxMeanN = 24;
inline constexpr std::size_t kMaxCovN = 16;

/// Average of (x_i1 - x_j1)'(x_i2 - x_j2) over i1 != i2 <= tau < j1 != j2.
double naive_mean_stat(ObservationView data, std::size_t tau);

/// The three H-kernel averages over distinct index tuples, H = {(x_i - x_j)'(x_k - x_l)}^2 / 4.
double naive_cov_stat(ObservationView data, std::size_t tau);

/// Every Gram sub-sum of one split by direct enumeration over distinct tuples.
CovSplitSums naive_cov_split_sums(ObservationView data, std::size_t tau);

/// sum_ij sigma_ij^2. Throws Error{NotSymmetric}.
double naive_trace_sq(const SquareMatrix& sigma);

/// sum_{i<k} a(i, k) x_i' x_k with a from the library's coefficient table and direct dots.
double coefficient_mean_aggregate(ObservationView data);

}  // namespace cpjoint::oracle
