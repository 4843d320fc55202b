#include "cpjoint/mean_change.hpp"

#include <string>

#include "cpjoint/error.hpp"

namespace cpjoint {

MeanStatResult mean_stat_curve(ObservationView data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    if (n < 4) throw Error(ErrorCode::NTooSmall, "mean statistic needs n >= 4");

    std::vector<double> total(p, 0.0);
    double total_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        for (std::size_t l = 0; l < p; ++l) {
            total[l] += x[l];
            total_sq += x[l] * x[l];
        }
    }

    MeanStatResult out;
    out.per_tau.tau_min = 2;
    out.per_tau.tau_max = n - 2;
    out.per_tau.values.reserve(n - 3);

    const double nd = static_cast<double>(n);
    std::vector<double> left(p, 0.0);
    double left_sq = 0.0;
    for (std::size_t tau = 1; tau <= n - 2; ++tau) {
        const auto x = data.row(tau - 1);
        for (std::size_t l = 0; l < p; ++l) {
            left[l] += x[l];
            left_sq += x[l] * x[l];
        }
        if (tau < 2) continue;

        double left_norm = 0.0, right_norm = 0.0, cross = 0.0;
        for (std::size_t l = 0; l < p; ++l) {
            const double r = total[l] - left[l];
            left_norm += left[l] * left[l];
            right_norm += r * r;
            cross += left[l] * r;
        }
        const double a = static_cast<double>(tau);
        const double b = nd - a;
        const double within_left = left_norm - left_sq;
        const double within_right = right_norm - (total_sq - left_sq);
        const double m = within_left / (a * (a - 1.0)) + within_right / (b * (b - 1.0)) -
                         2.0 * cross / (a * b);
        out.per_tau.values.push_back(m);
        out.aggregate += a * b / nd * m;
    }
    return out;
}

MeanCoefficients::MeanCoefficients(std::size_t n)
    : n_(n), left_(n, 0.0), right_(n, 0.0) {
    if (n < 4) throw Error(ErrorCode::NTooSmall, "coefficient table needs n >= 4");
    const double nd = static_cast<double>(n);
    scale_ = 2.0 * (1.0 - 1.0 / nd);
    offset_ = 6.0 / nd - 2.0;

    // 1-based: left(i) = sum_{tau=2}^{i-1} 1 / (n - tau - 1), right(k) = sum_{tau=k}^{n-2} 1 / (tau - 1).
    // Empty sums are zero. Stored at 0-based positions i - 1 and k - 1.
    for (std::size_t i = 3; i <= n; ++i) {
        const double tau = static_cast<double>(i - 1);
        left_[i - 1] = left_[i - 2] + 1.0 / (nd - tau - 1.0);
    }
    for (std::size_t k = n - 2; k >= 2; --k) {
        const double tau = static_cast<double>(k);
        right_[k - 1] = (k + 1 <= n - 2 ? right_[k] : 0.0) + 1.0 / (tau - 1.0);
    }
}

MeanCoefficients mean_coefficients(std::size_t n) { return MeanCoefficients(n); }

}  // namespace cpjoint
