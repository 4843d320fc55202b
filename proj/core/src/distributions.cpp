#include "cpjoint/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cpjoint/error.hpp"

namespace cpjoint {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// Above this the plain erfc route is replaced by the Mill's-ratio continued fraction.
constexpr double kTailSwitch = 8.0;
constexpr int kMillsDepth = 80;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw Error(ErrorCode::NonFiniteInput, std::string(what) + " requires a finite argument");
    }
}

double clamp_open_unit(double v) {
    constexpr double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    return v < lo ? lo : (v > hi ? hi : v);
}

// Mill's ratio (1 - Phi(x)) / phi(x) for x > 0 from the continued fraction
//   R(x) = 1 / (x + 1 / (x + 2 / (x + 3 / (x + ...)))),
// evaluated bottom-up. At x >= 8 depth 80 is far past convergence.
double mills_ratio(double x) {
    double t = x;
    for (int k = kMillsDepth; k >= 1; --k) t = x + k / t;
    return 1.0 / t;
}

}  // namespace

double normal_sf(double x) {
    require_finite(x, "normal_sf");
    return clamp_open_unit(0.5 * std::erfc(x * kInvSqrt2));
}

double normal_log_sf(double x) {
    require_finite(x, "normal_log_sf");
    if (x < 0.0) {
        // Here 1 - Phi(x) = 1 - (1 - Phi(|x|)) is close to 1; log1p keeps the small term exact.
        return std::log1p(-0.5 * std::erfc(-x * kInvSqrt2));
    }
    if (x <= kTailSwitch) return std::log(0.5 * std::erfc(x * kInvSqrt2));

    const double half_sq = 0.5 * x * x;
    if (!std::isfinite(half_sq)) return std::numeric_limits<double>::lowest();
    constexpr double log_sqrt_2pi = 0.91893853320467274178;
    return -half_sq - log_sqrt_2pi + std::log(mills_ratio(x));
}

double fisher_combine(PValuePair p) {
    const auto inside = [](double v) { return v > 0.0 && v < 1.0; };
    if (!inside(p.p_mean) || !inside(p.p_cov)) {
        throw Error(ErrorCode::POutOfRange, "p-values must lie in (0, 1)");
    }
    return -2.0 * std::log(p.p_mean) - 2.0 * std::log(p.p_cov);
}

double fisher_combine_log(double log_p_mean, double log_p_cov) {
    if (!(log_p_mean <= 0.0) || !(log_p_cov <= 0.0)) {
        throw Error(ErrorCode::POutOfRange, "log p-values must be <= 0");
    }
    return -2.0 * log_p_mean - 2.0 * log_p_cov;
}

double chi2_4_sf(double t) {
    if (std::isnan(t)) throw Error(ErrorCode::NonFiniteInput, "chi2_4_sf argument is NaN");
    if (t < 0.0) throw Error(ErrorCode::NegativeInput, "chi2_4_sf requires t >= 0");
    return std::exp(-0.5 * t) * (1.0 + 0.5 * t);
}

double chi2_4_log_sf(double t) {
    if (std::isnan(t)) throw Error(ErrorCode::NonFiniteInput, "chi2_4_log_sf argument is NaN");
    if (t < 0.0) throw Error(ErrorCode::NegativeInput, "chi2_4_log_sf requires t >= 0");
    return -0.5 * t + std::log1p(0.5 * t);
}

double chi2_4_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
    }
    // Solve h(t) = log sf(t) - log alpha = 0. h is strictly decreasing on t > 0 with
    // h'(t) = -t / (2 (2 + t)). At t0 = -2 log alpha, sf(t0) = alpha (1 + t0 / 2) >= alpha,
    // so the root lies to the right of t0.
    const double log_alpha = std::log(alpha);
    const auto h = [&](double t) { return chi2_4_log_sf(t) - log_alpha; };

    double lo = -2.0 * log_alpha;
    double hi = lo + 1.0;
    while (h(hi) > 0.0) hi = 2.0 * hi + 1.0;

    double t = lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double ht = h(t);
        if (ht > 0.0) lo = t; else hi = t;
        if (std::abs(chi2_4_sf(t) - alpha) <= 1e-15 * std::max(alpha, 1e-3) || hi - lo <= 0.0) break;

        const double slope = -t / (2.0 * (2.0 + t));
        double next = slope < 0.0 ? t - ht / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == t) break;
        t = next;
    }
    return t;
}

}  // namespace cpjoint
