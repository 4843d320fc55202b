#include "cpjoint/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpjoint/cov_change.hpp"
#include "cpjoint/distributions.hpp"
#include "cpjoint/error.hpp"
#include "cpjoint/mean_change.hpp"
#include "cpjoint/scale.hpp"

namespace cpjoint {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 1)");
    }
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0 && lambda < 0.5)) {
        throw Error(ErrorCode::BadParam, "lambda must lie in (0, 0.5)");
    }
}

double p_from_log(double log_p) {
    const double lo = std::numeric_limits<double>::denorm_min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(std::exp(log_p), lo, hi);
}

std::size_t first_argmin(const std::vector<double>& values) {
    return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) -
                                    values.begin());
}

}  // namespace

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::Fisher: return "FISHER";
        case Method::Bonferroni: return "BONFERRONI";
        case Method::MeanOnly: return "MEAN_ONLY";
        case Method::CovOnly: return "COV_ONLY";
    }
    return "UNKNOWN";
}

std::size_t select_min_p(double log_p_mean, double log_p_cov, std::size_t tau_mean,
                         std::size_t tau_cov) noexcept {
    return log_p_mean <= log_p_cov ? tau_mean : tau_cov;
}

std::size_t first_argmax(const std::vector<double>& values) {
    // max_element returns the first of equal maxima.
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) -
                                    values.begin());
}

Analysis analyze(const Dataset& data, double alpha, double lambda) {
    check_alpha(alpha);
    check_lambda(lambda);

    const std::size_t n = data.n();
    const double nd = static_cast<double>(n);
    const Calibration cal = calibrate(trace_sigma2_hat(data), n);

    // The statistics are translation invariant; centering first keeps the Gram sums small.
    const Dataset work = centered(data);
    const GramMatrix g = gram(work);
    const MeanStatResult mean = mean_stat_curve(work);
    const CovStatResult cov = cov_stat_curve(work, g);

    Analysis out;
    TestOutcome& t = out.test;
    t.m_n = mean.aggregate;
    t.v_n = cov.aggregate;
    t.trace_hat = cal.trace_hat;
    t.sigma1_sq = cal.sigma1_sq;
    t.sigma2_sq = cal.sigma2_sq;
    t.z_mean = t.m_n / std::sqrt(t.sigma1_sq);
    t.z_cov = t.v_n / std::sqrt(t.sigma2_sq);
    t.log_p_mean = normal_log_sf(t.z_mean);
    t.log_p_cov = normal_log_sf(t.z_cov);
    t.p_mean = p_from_log(t.log_p_mean);
    t.p_cov = p_from_log(t.log_p_cov);
    t.t_n = fisher_combine_log(t.log_p_mean, t.log_p_cov);
    t.p_combined = std::max(std::exp(chi2_4_log_sf(t.t_n)),
                            std::numeric_limits<double>::denorm_min());
    t.alpha = alpha;
    t.reject = t.p_combined <= alpha;

    const auto trim = static_cast<std::size_t>(std::floor(lambda * nd));
    const std::size_t lo = std::max<std::size_t>(trim, 4);
    const std::size_t hi = std::min(n - trim, n - 4);
    if (lo > hi) throw Error(ErrorCode::EmptyGrid, "localization grid is empty");

    ProfileSet& prof = out.profiles;
    prof.grid_lo = lo;
    prof.grid_hi = hi;
    const double two_tr = 2.0 * cal.trace_hat;
    const double mean_scale = 1.0 / std::sqrt(two_tr);
    const double cov_scale = 1.0 / two_tr;

    LocalizationOutcome& loc = out.localization;
    loc.lambda = lambda;
    loc.grid_lo = lo;
    loc.grid_hi = hi;
    loc.profile.tau_min = lo;
    loc.profile.tau_max = hi;
    for (std::size_t tau = lo; tau <= hi; ++tau) {
        const double a = static_cast<double>(tau);
        const double w = a * (nd - a) / nd;
        const double mz = mean_scale * w * mean.per_tau.at(tau);
        const double cz = cov_scale * w * cov.per_tau.at(tau);
        const double lpm = normal_log_sf(mz);
        const double lpc = normal_log_sf(cz);
        prof.mean_z.push_back(mz);
        prof.cov_z.push_back(cz);
        prof.mean_log_p.push_back(lpm);
        prof.cov_log_p.push_back(lpc);
        loc.profile.values.push_back(fisher_combine_log(lpm, lpc));
    }
    loc.tau_hat = lo + first_argmax(loc.profile.values);

    const std::size_t tau_mean = lo + first_argmin(prof.mean_log_p);
    const std::size_t tau_cov = lo + first_argmin(prof.cov_log_p);
    const double log_alpha = std::log(alpha);
    out.baselines = {
        {Method::Fisher, t.reject, loc.tau_hat},
        {Method::Bonferroni, std::min(t.log_p_mean, t.log_p_cov) <= std::log(alpha / 2.0),
         select_min_p(t.log_p_mean, t.log_p_cov, tau_mean, tau_cov)},
        {Method::MeanOnly, t.log_p_mean <= log_alpha, tau_mean},
        {Method::CovOnly, t.log_p_cov <= log_alpha, tau_cov},
    };
    return out;
}

TestOutcome detect(const Dataset& data, double alpha) {
    return analyze(data, alpha, kDefaultLambda).test;
}

LocalizationOutcome localize(const Dataset& data, double lambda) {
    return analyze(data, kDefaultAlpha, lambda).localization;
}

std::vector<BaselineOutcome> baselines(const Dataset& data, double alpha, double lambda) {
    return analyze(data, alpha, lambda).baselines;
}

}  // namespace cpjoint
