#include "oracle.hpp"

#include <string>
#include <vector>

#include "cpjoint/error.hpp"
#include "cpjoint/mean_change.hpp"

namespace cpjoint::oracle {

namespace {

double inner(ObservationView d, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t l = 0; l < d.p(); ++l) s += d(i, l) * d(j, l);
    return s;
}

// (x_a - x_b)'(x_c - x_d), straight from coordinates.
double diff_inner(ObservationView d, std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
    double s = 0.0;
    for (std::size_t l = 0; l < d.p(); ++l) s += (d(a, l) - d(b, l)) * (d(c, l) - d(e, l));
    return s;
}

double kernel_h(ObservationView d, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    const double v = diff_inner(d, i, j, k, l);
    return v * v / 4.0;
}

void require_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw Error(ErrorCode::BadParam,
                    "oracle limited to n <= " + std::to_string(cap) + ", got " + std::to_string(n));
    }
}

void require_tau(std::size_t tau, std::size_t lo, std::size_t hi) {
    if (tau < lo || tau > hi) {
        throw Error(ErrorCode::TauOutOfRange, "tau " + std::to_string(tau) + " outside [" +
                                                  std::to_string(lo) + ", " +
                                                  std::to_string(hi) + "]");
    }
}

}  // namespace

double naive_mean_stat(ObservationView data, std::size_t tau) {
    const std::size_t n = data.n();
    require_cap(n, kMaxMeanN);
    require_tau(tau, 2, n >= 2 ? n - 2 : 0);
    double sum = 0.0;
    for (std::size_t i1 = 0; i1 < tau; ++i1)
        for (std::size_t i2 = 0; i2 < tau; ++i2) {
            if (i1 == i2) continue;
            for (std::size_t j1 = tau; j1 < n; ++j1)
                for (std::size_t j2 = tau; j2 < n; ++j2) {
                    if (j1 == j2) continue;
                    sum += diff_inner(data, i1, j1, i2, j2);
                }
        }
    const double a = static_cast<double>(tau);
    const double b = static_cast<double>(n - tau);
    return sum / (a * (a - 1.0) * b * (b - 1.0));
}

double naive_cov_stat(ObservationView data, std::size_t tau) {
    const std::size_t n = data.n();
    require_cap(n, kMaxCovN);
    require_tau(tau, 4, n >= 4 ? n - 4 : 0);

    const auto within = [&](std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        double count = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = lo; j < hi; ++j) {
                if (j == i) continue;
                for (std::size_t k = lo; k < hi; ++k) {
                    if (k == i || k == j) continue;
                    for (std::size_t l = lo; l < hi; ++l) {
                        if (l == i || l == j || l == k) continue;
                        sum += kernel_h(data, i, j, k, l);
                        count += 1.0;
                    }
                }
            }
        return sum / count;
    };

    double cross = 0.0;
    double count = 0.0;
    for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t j = 0; j < tau; ++j) {
            if (j == i) continue;
            for (std::size_t k = tau; k < n; ++k)
                for (std::size_t l = tau; l < n; ++l) {
                    if (l == k) continue;
                    cross += kernel_h(data, i, j, k, l);
                    count += 1.0;
                }
        }
    return within(0, tau) + within(tau, n) - 2.0 * cross / count;
}

CovSplitSums naive_cov_split_sums(ObservationView data, std::size_t tau) {
    const std::size_t n = data.n();
    require_cap(n, kMaxCovN);
    require_tau(tau, 4, n >= 4 ? n - 4 : 0);

    std::vector<double> g(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i * n + j] = inner(data, i, j);
    const auto G = [&](std::size_t i, std::size_t j) { return g[i * n + j]; };

    const auto within = [&](std::size_t lo, std::size_t hi) {
        CovSplitSums::Within w;
        for (std::size_t i = lo; i < hi; ++i)
            for (std::size_t j = lo; j < hi; ++j) {
                if (j == i) continue;
                w.pair_sq += G(i, j) * G(i, j);
                for (std::size_t k = lo; k < hi; ++k) {
                    if (k == i || k == j) continue;
                    w.path += G(i, j) * G(j, k);
                    for (std::size_t l = lo; l < hi; ++l) {
                        if (l == i || l == j || l == k) continue;
                        w.quad += G(i, j) * G(k, l);
                    }
                }
            }
        return w;
    };

    CovSplitSums s;
    s.left = within(0, tau);
    s.right = within(tau, n);
    for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t j = tau; j < n; ++j) s.cross_sq += G(i, j) * G(i, j);
    for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t k = 0; k < tau; ++k) {
            if (k == i) continue;
            for (std::size_t j = tau; j < n; ++j) s.cross_path_right += G(i, j) * G(j, k);
        }
    for (std::size_t i = tau; i < n; ++i)
        for (std::size_t k = tau; k < n; ++k) {
            if (k == i) continue;
            for (std::size_t j = 0; j < tau; ++j) s.cross_path_left += G(i, j) * G(j, k);
        }
    for (std::size_t i = 0; i < tau; ++i)
        for (std::size_t k = 0; k < tau; ++k) {
            if (k == i) continue;
            for (std::size_t j = tau; j < n; ++j)
                for (std::size_t l = tau; l < n; ++l) {
                    if (l == j) continue;
                    s.cross_quad += G(i, j) * G(k, l);
                }
        }
    return s;
}

double naive_trace_sq(const SquareMatrix& sigma) {
    for (std::size_t i = 0; i < sigma.dim; ++i)
        for (std::size_t j = 0; j < sigma.dim; ++j)
            if (sigma(i, j) != sigma(j, i)) throw Error(ErrorCode::NotSymmetric, "sigma is not symmetric");
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.dim; ++i)
        for (std::size_t j = 0; j < sigma.dim; ++j) s += sigma(i, j) * sigma(i, j);
    return s;
}

double coefficient_mean_aggregate(ObservationView data) {
    const std::size_t n = data.n();
    const MeanCoefficients a = mean_coefficients(n);
    double s = 0.0;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = 0; i < k; ++i) s += a(i, k) * inner(data, i, k);
    return s;
}

}  // namespace cpjoint::oracle
