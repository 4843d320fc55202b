#pragma once

#include <cstddef>
#include <vector>

#include "cpjoint/dataset.hpp"
#include "cpjoint/model.hpp"

namespace cpjoint {

/// Mean-shift U-statistics M_n(tau), tau = 2..n-2, and their weighted aggregate
///   M_n = sum_tau tau (n - tau) / n * M_n(tau).
struct MeanStatResult {
    StatCurve per_tau;
    double aggregate = 0.0;
};

/// All M_n(tau) in O(np) from running sums of x_i and x_i' x_i.
/// Throws Error{NTooSmall} for n < 4.
MeanStatResult mean_stat_curve(ObservationView data);

/// Coefficients a(i, k), 0 <= i < k < n, such that M_n = sum_{i<k} a(i, k) x_i' x_k.
class MeanCoefficients {
public:
    explicit MeanCoefficients(std::size_t n);

    std::size_t n() const noexcept { return n_; }

    /// 0-based indices with i < k.
    double operator()(std::size_t i, std::size_t k) const noexcept {
        // a depends on i through the left harmonic sum and on k through the right one.
        return scale_ * (left_[i] + right_[k]) + offset_;
    }

private:
    std::size_t n_;
    double scale_;
    double offset_;
    std::vector<double> left_;
    std::vector<double> right_;
};

/// Throws Error{NTooSmall} for n < 4.
MeanCoefficients mean_coefficients(std::size_t n);

}  // namespace cpjoint
