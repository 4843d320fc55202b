#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cpjoint/dataset.hpp"
#include "cpjoint/model.hpp"

namespace cpjoint {

inline constexpr double kDefaultAlpha = 0.05;
inline constexpr double kDefaultLambda = 0.2;

/// Joint mean/covariance changepoint test at level alpha.
/// Throws Error{AlphaOutOfRange} or Error{DegenerateScale}.
TestOutcome detect(const Dataset& data, double alpha = kDefaultAlpha);

/// Changepoint estimate: the smallest maximizer of the combined per-split statistic over
/// [max(floor(lambda n), 4), min(n - floor(lambda n), n - 4)].
/// Throws Error{BadParam} for lambda outside (0, 0.5), Error{EmptyGrid}, Error{DegenerateScale}.
LocalizationOutcome localize(const Dataset& data, double lambda = kDefaultLambda);

enum class Method { Fisher, Bonferroni, MeanOnly, CovOnly };
inline constexpr Method kAllMethods[] = {Method::Fisher, Method::Bonferroni, Method::MeanOnly,
                                         Method::CovOnly};
std::string_view method_name(Method m) noexcept;

struct BaselineOutcome {
    Method method = Method::Fisher;
    bool reject = false;
    std::optional<std::size_t> tau_hat;
};

/// Fisher plus the comparators built from the same two p-values, in kAllMethods order.
/// Bonferroni uses min-p localization (the mean estimate when p_mean <= p_cov).
std::vector<BaselineOutcome> baselines(const Dataset& data, double alpha = kDefaultAlpha,
                                       double lambda = kDefaultLambda);

/// Min-p localization: the mean estimate when log_p_mean <= log_p_cov (ties go to the mean).
std::size_t select_min_p(double log_p_mean, double log_p_cov, std::size_t tau_mean,
                         std::size_t tau_cov) noexcept;

/// Standardized per-split statistics over the localization grid.
struct ProfileSet {
    std::size_t grid_lo = 0;
    std::size_t grid_hi = 0;
    std::vector<double> mean_z;   ///< {2 tr}^-1/2 tau (n - tau) / n M_n(tau)
    std::vector<double> cov_z;    ///< {2 tr}^-1 tau (n - tau) / n V_n(tau)
    std::vector<double> mean_log_p;
    std::vector<double> cov_log_p;
};

/// One pass producing everything the pipelines above report; the Gram matrix is built once.
struct Analysis {
    TestOutcome test;
    LocalizationOutcome localization;
    ProfileSet profiles;
    std::vector<BaselineOutcome> baselines;
};

Analysis analyze(const Dataset& data, double alpha = kDefaultAlpha,
                 double lambda = kDefaultLambda);

/// Position of the first maximum. Precondition: values nonempty.
std::size_t first_argmax(const std::vector<double>& values);

}  // namespace cpjoint
