#include "cpjoint/cov_change.hpp"

#include "cpjoint/error.hpp"

namespace cpjoint {

namespace {

// Falling factorials m (m-1) ... (m-k+1).
double perm2(double m) { return m * (m - 1.0); }
double perm3(double m) { return m * (m - 1.0) * (m - 2.0); }
double perm4(double m) { return m * (m - 1.0) * (m - 2.0) * (m - 3.0); }

}  // namespace

double cov_stat_from_sums(const CovSplitSums& s, std::size_t n, std::size_t tau) {
    const double a = static_cast<double>(tau);
    const double b = static_cast<double>(n - tau);
    const auto within = [](const CovSplitSums::Within& w, double m) {
        return w.pair_sq / perm2(m) - 2.0 * w.path / perm3(m) + w.quad / perm4(m);
    };
    const double cross = s.cross_sq / (a * b) - s.cross_path_right / (perm2(a) * b) -
                         s.cross_path_left / (a * perm2(b)) +
                         s.cross_quad / (perm2(a) * perm2(b));
    return within(s.left, a) + within(s.right, b) - 2.0 * cross;
}

std::vector<CovSplitSums> cov_split_sums(const GramMatrix& g) {
    const std::size_t n = g.n();
    if (n < 8) throw Error(ErrorCode::NTooSmall, "covariance statistic needs n >= 8");

    // Elementwise square of the Gram matrix, kept alongside g.
    std::vector<double> g2(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto gi = g.row(i);
        for (std::size_t j = 0; j < n; ++j) g2[i * n + j] = gi[j] * gi[j];
    }

    std::vector<double> row_total(n, 0.0), sq_total(n, 0.0), diag(n), diag_sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto gi = g.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            row_total[j] += gi[j];
            sq_total[j] += g2[i * n + j];
        }
        diag[i] = gi[i];
        diag_sq[i] = g2[i * n + i];
    }

    // prefix[j] = sum_{i < tau} g_ij and prefix_sq[j] = sum_{i < tau} g_ij^2 (0-based rows).
    std::vector<double> prefix(n, 0.0), prefix_sq(n, 0.0);
    std::vector<CovSplitSums> out;
    out.reserve(n - 7);

    for (std::size_t tau = 1; tau <= n - 4; ++tau) {
        const auto added = g.row(tau - 1);
        const double* added_sq = g2.data() + (tau - 1) * n;
        for (std::size_t j = 0; j < n; ++j) {
            prefix[j] += added[j];
            prefix_sq[j] += added_sq[j];
        }
        if (tau < 4) continue;

        CovSplitSums s;
        double left_row = 0.0, left_diag = 0.0, left_sq = 0.0, left_diag_sq = 0.0;
        double left_from_right_sq = 0.0;
        for (std::size_t j = 0; j < tau; ++j) {
            const double r = prefix[j] - diag[j];
            left_row += prefix[j];
            left_diag += diag[j];
            left_sq += prefix_sq[j];
            left_diag_sq += diag_sq[j];
            s.left.path += r * r - prefix_sq[j] + diag_sq[j];

            const double rr = row_total[j] - prefix[j];
            const double qr = sq_total[j] - prefix_sq[j];
            s.cross_path_left += rr * rr - qr;
            left_from_right_sq += rr * rr;
        }

        double right_row = 0.0, right_diag = 0.0, right_sq = 0.0, right_diag_sq = 0.0;
        double cross_row = 0.0, right_from_left_sq = 0.0;
        for (std::size_t j = tau; j < n; ++j) {
            const double rr = row_total[j] - prefix[j];
            const double qr = sq_total[j] - prefix_sq[j];
            const double r = rr - diag[j];
            right_row += rr;
            right_diag += diag[j];
            right_sq += qr;
            right_diag_sq += diag_sq[j];
            s.right.path += r * r - qr + diag_sq[j];

            s.cross_sq += prefix_sq[j];
            s.cross_path_right += prefix[j] * prefix[j] - prefix_sq[j];
            cross_row += prefix[j];
            right_from_left_sq += prefix[j] * prefix[j];
        }

        const auto finish = [](CovSplitSums::Within& w, double row, double dg, double sq,
                               double dg_sq) {
            const double off = row - dg;
            w.pair_sq = sq - dg_sq;
            w.quad = off * off - 2.0 * w.pair_sq - 4.0 * w.path;
        };
        finish(s.left, left_row, left_diag, left_sq, left_diag_sq);
        finish(s.right, right_row, right_diag, right_sq, right_diag_sq);
        s.cross_quad =
            cross_row * cross_row - left_from_right_sq - right_from_left_sq + s.cross_sq;
        out.push_back(s);
    }
    return out;
}

CovStatResult cov_stat_curve(ObservationView data, const GramMatrix& g) {
    const std::size_t n = data.n();
    if (n < 8) throw Error(ErrorCode::NTooSmall, "covariance statistic needs n >= 8");
    if (g.n() != n) throw Error(ErrorCode::BadParam, "Gram matrix does not match the data");

    const auto sums = cov_split_sums(g);
    CovStatResult out;
    out.per_tau.tau_min = 4;
    out.per_tau.tau_max = n - 4;
    out.per_tau.values.reserve(sums.size());
    const double nd = static_cast<double>(n);
    for (std::size_t k = 0; k < sums.size(); ++k) {
        const std::size_t tau = 4 + k;
        const double v = cov_stat_from_sums(sums[k], n, tau);
        out.per_tau.values.push_back(v);
        const double a = static_cast<double>(tau);
        out.aggregate += a * (nd - a) / nd * v;
    }
    return out;
}

}  // namespace cpjoint
