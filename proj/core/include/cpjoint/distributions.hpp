#pragma once

namespace cpjoint {

/// Upper tail 1 - Phi(x) of the standard normal, clamped into the open interval (0, 1).
/// Throws Error{NonFiniteInput} for NaN/Inf.
double normal_sf(double x);

/// log(1 - Phi(x)). Finite for every finite x: beyond x = 8 it is evaluated from the
/// continued fraction for Mill's ratio, so it stays inside the bracket
///   log(phi(x) / x * x^2 / (1 + x^2)) <= log_sf(x) <= log(phi(x) / x).
double normal_log_sf(double x);

/// A pair of strictly interior p-values for the mean and covariance components.
struct PValuePair {
    double p_mean;
    double p_cov;
};

/// Fisher's combination -2 log(p_mean) - 2 log(p_cov).
/// Throws Error{POutOfRange} unless both p-values lie in (0, 1).
double fisher_combine(PValuePair p);

/// Same combination from log p-values, which avoids underflow for strong signals.
/// Both arguments must be <= 0.
double fisher_combine_log(double log_p_mean, double log_p_cov);

/// Survival function of chi-squared with 4 degrees of freedom: exp(-t/2) (1 + t/2).
double chi2_4_sf(double t);
double chi2_4_log_sf(double t);

/// Upper-alpha quantile of chi-squared(4), by safeguarded Newton on chi2_4_sf.
double chi2_4_quantile(double alpha);

}  // namespace cpjoint
