#pragma once

#include <cstddef>

#include "cpjoint/dataset.hpp"

namespace cpjoint {

/// Null-variance plug-ins for the aggregated statistics.
struct Calibration {
    double trace_hat = 0.0;
    double sigma1_sq = 0.0;  ///< (2 pi^2 - 18) / 3 * n^2 * trace_hat
    double sigma2_sq = 0.0;  ///< (4 pi^2 - 36) / 3 * n^2 * trace_hat^2
};

/// Difference-based estimate of tr(Sigma^2):
///   1 / (4 (n - 3)) * sum_{i=1}^{n-3} {(x_i - x_{i+1})' (x_{i+2} - x_{i+3})}^2.
/// Throws Error{NTooSmall} for n < 4.
double trace_sigma2_hat(ObservationView data);

/// Throws Error{DegenerateScale} if trace_hat <= 0 (or is not finite).
Calibration calibrate(double trace_hat, std::size_t n);

}  // namespace cpjoint
