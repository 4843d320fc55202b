#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cpjoint {

/// Smallest sample size for which every statistic range in the library is nonempty.
inline constexpr std::size_t kMinObservations = 8;

/// Non-owning row-major view of n observations in R^p. The statistic kernels take views so
/// they can also run on the tiny hand-worked cases below the Dataset minimum; each kernel
/// enforces its own smallest n.
class ObservationView {
public:
    ObservationView(std::size_t n, std::size_t p, std::span<const double> values) noexcept
        : n_(n), p_(p), values_(values) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return p_; }
    std::span<const double> row(std::size_t i) const noexcept { return values_.subspan(i * p_, p_); }
    double operator()(std::size_t i, std::size_t l) const noexcept { return values_[i * p_ + l]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::size_t n_;
    std::size_t p_;
    std::span<const double> values_;
};

/// An n x p matrix of finite doubles, one observation per row, rows ordered in time.
///
/// Storage is row-major so that the pairwise kernels stream over one observation at a time.
/// Instances are immutable once validated.
class Dataset {
public:
    /// Validates and adopts a flat row-major buffer of size n * p.
    /// Throws Error{TooFewObservations} when n < 8, Error{NonFiniteValue} on NaN/Inf,
    /// Error{RaggedMatrix} when the buffer size does not match n * p or p == 0.
    Dataset(std::size_t n, std::size_t p, std::vector<double> values);

    std::size_t n() const noexcept { return n_; }
    std::size_t p() const noexcept { return p_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * p_, p_};
    }
    double operator()(std::size_t i, std::size_t l) const noexcept { return values_[i * p_ + l]; }

    std::span<const double> values() const noexcept { return values_; }

    ObservationView view() const noexcept { return {n_, p_, values_}; }
    operator ObservationView() const noexcept { return view(); }  // NOLINT(google-explicit-constructor)

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> values_;
};

/// Builds a Dataset from a vector of rows. Rows must all have the same length.
Dataset dataset_from_matrix(const std::vector<std::vector<double>>& rows);

/// Copy of `data` with the column means subtracted from every row. All statistics in this
/// library are translation invariant, so this only changes rounding behaviour.
Dataset centered(const Dataset& data);

/// Symmetric n x n matrix of inner products g(i, j) = x_i' x_j.
class GramMatrix {
public:
    GramMatrix(std::size_t n, std::vector<double> entries) : n_(n), g_(std::move(entries)) {}

    std::size_t n() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return g_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {g_.data() + i * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> g_;
};

/// O(n^2 p). The lower triangle is computed and mirrored, so the result is exactly symmetric.
GramMatrix gram(ObservationView data);

}  // namespace cpjoint
