#include "cpjoint/scale.hpp"

#include <cmath>
#include <numbers>

#include "cpjoint/error.hpp"

namespace cpjoint {

double trace_sigma2_hat(ObservationView data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    if (n < 4) throw Error(ErrorCode::NTooSmall, "trace estimator needs n >= 4");

    double sum = 0.0;
    for (std::size_t i = 0; i + 3 < n; ++i) {
        const auto a = data.row(i);
        const auto b = data.row(i + 1);
        const auto c = data.row(i + 2);
        const auto d = data.row(i + 3);
        double inner = 0.0;
        for (std::size_t l = 0; l < p; ++l) inner += (a[l] - b[l]) * (c[l] - d[l]);
        sum += inner * inner;
    }
    return sum / (4.0 * static_cast<double>(n - 3));
}

Calibration calibrate(double trace_hat, std::size_t n) {
    if (!(trace_hat > 0.0) || !std::isfinite(trace_hat)) {
        throw Error(ErrorCode::DegenerateScale,
                    "estimated tr(Sigma^2) is not positive; the data has no usable variation");
    }
    constexpr double pi_sq = std::numbers::pi * std::numbers::pi;
    const double n_sq = static_cast<double>(n) * static_cast<double>(n);
    Calibration c;
    c.trace_hat = trace_hat;
    c.sigma1_sq = (2.0 * pi_sq - 18.0) / 3.0 * n_sq * trace_hat;
    c.sigma2_sq = (4.0 * pi_sq - 36.0) / 3.0 * n_sq * trace_hat * trace_hat;
    return c;
}

}  // namespace cpjoint
