#include "cpjoint/dataset.hpp"

#include <cmath>
#include <string>

#include "cpjoint/error.hpp"

namespace cpjoint {

Dataset::Dataset(std::size_t n, std::size_t p, std::vector<double> values)
    : n_(n), p_(p), values_(std::move(values)) {
    if (p_ == 0 || values_.size() != n_ * p_) {
        throw Error(ErrorCode::RaggedMatrix,
                    "expected " + std::to_string(n_) + " x " + std::to_string(p_) +
                        " values, got " + std::to_string(values_.size()));
    }
    if (n_ < kMinObservations) {
        throw Error(ErrorCode::TooFewObservations,
                    "need at least " + std::to_string(kMinObservations) + " observations, got " +
                        std::to_string(n_));
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw Error(ErrorCode::NonFiniteValue, "entry (" + std::to_string(k / p_ + 1) + ", " +
                                                       std::to_string(k % p_ + 1) +
                                                       ") is not finite");
        }
    }
}

Dataset dataset_from_matrix(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t p = n == 0 ? 0 : rows.front().size();
    std::vector<double> flat;
    flat.reserve(n * p);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != p) {
            throw Error(ErrorCode::RaggedMatrix, "row " + std::to_string(i + 1) + " has " +
                                                     std::to_string(rows[i].size()) +
                                                     " columns, expected " + std::to_string(p));
        }
        flat.insert(flat.end(), rows[i].begin(), rows[i].end());
    }
    if (n > 0 && n < kMinObservations) {
        // Report the sample-size problem ahead of an empty-row problem.
        throw Error(ErrorCode::TooFewObservations,
                    "need at least " + std::to_string(kMinObservations) + " observations, got " +
                        std::to_string(n));
    }
    return Dataset(n, p, std::move(flat));
}

Dataset centered(const Dataset& data) {
    const std::size_t n = data.n();
    const std::size_t p = data.p();
    std::vector<double> mean(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = data.row(i);
        for (std::size_t l = 0; l < p; ++l) mean[l] += x[l];
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<double> out(data.values().begin(), data.values().end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < p; ++l) out[i * p + l] -= mean[l];
    }
    return Dataset(n, p, std::move(out));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    // Four independent partial sums; fixed order, so results are reproducible.
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    const std::size_t p = a.size();
    std::size_t l = 0;
    for (; l + 4 <= p; l += 4) {
        s0 += a[l] * b[l];
        s1 += a[l + 1] * b[l + 1];
        s2 += a[l + 2] * b[l + 2];
        s3 += a[l + 3] * b[l + 3];
    }
    for (; l < p; ++l) s0 += a[l] * b[l];
    return (s0 + s1) + (s2 + s3);
}

}  // namespace

GramMatrix gram(ObservationView data) {
    const std::size_t n = data.n();
    std::vector<double> g(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = data.row(i);
        for (std::size_t j = 0; j <= i; ++j) {
            const double v = dot(xi, data.row(j));
            g[i * n + j] = v;
            g[j * n + i] = v;
        }
    }
    return GramMatrix(n, std::move(g));
}

}  // namespace cpjoint
