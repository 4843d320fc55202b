#include "cpjoint/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cpjoint/error.hpp"

namespace cpjoint {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXd to_eigen(const SquareMatrix& m) {
    Eigen::MatrixXd out(m.dim, m.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < m.dim; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return out;
}

SquareMatrix from_eigen(const Eigen::MatrixXd& m) {
    SquareMatrix out{static_cast<std::size_t>(m.rows()), {}};
    out.entries.resize(out.dim * out.dim);
    for (std::size_t i = 0; i < out.dim; ++i) {
        for (std::size_t j = 0; j < out.dim; ++j) {
            out(i, j) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

void check_symmetric(const SquareMatrix& m) {
    if (m.entries.size() != m.dim * m.dim) {
        throw Error(ErrorCode::NotSymmetric, "matrix storage is not square");
    }
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (m(i, j) != m(j, i)) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
        }
    }
}

void validate(const SimulationModel& m) {
    const auto bad = [](const std::string& what) { throw Error(ErrorCode::BadParam, what); };
    if (m.n < kMinObservations) bad("n must be at least 8");
    if (m.p < 1) bad("p must be at least 1");
    if (m.tau_star && (*m.tau_star < 1 || *m.tau_star > m.n - 1)) bad("tau_star must lie in [1, n-1]");
    if (!(m.delta1 >= 0.0) || !std::isfinite(m.delta1)) bad("delta1 must be a nonnegative real");
    if (!(m.delta2 > 0.0) || !std::isfinite(m.delta2)) bad("delta2 must be positive");
}

SquareMatrix factor(const SquareMatrix& sigma, SqrtMethod method) {
    return method == SqrtMethod::Spectral ? cov_sqrt(sigma) : cov_cholesky(sigma);
}

}  // namespace

SquareMatrix build_cov(const CovSpec& spec, std::size_t p) {
    if (p < 1) throw Error(ErrorCode::BadParam, "p must be at least 1");
    if (!(spec.param > -1.0 && spec.param < 1.0)) {
        throw Error(ErrorCode::BadParam, "correlation parameter must lie in (-1, 1)");
    }
    if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) {
        throw Error(ErrorCode::BadParam, "covariance scale must be positive");
    }

    SquareMatrix out{p, std::vector<double>(p * p, 0.0)};
    switch (spec.scenario) {
        case CovScenario::Ar1:
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < p; ++j) {
                    const auto lag = static_cast<double>(i > j ? i - j : j - i);
                    out(i, j) = spec.scale * std::pow(spec.param, lag);
                }
            }
            break;
        case CovScenario::Block5: {
            const std::size_t blocked = (p / 5) * 5;
            for (std::size_t i = 0; i < p; ++i) {
                out(i, i) = spec.scale;
                if (i >= blocked) continue;
                for (std::size_t j = (i / 5) * 5; j < (i / 5) * 5 + 5; ++j) {
                    if (j != i) out(i, j) = spec.scale * spec.param;
                }
            }
            break;
        }
    }
    return out;
}

SquareMatrix cov_sqrt(const SquareMatrix& sigma) {
    check_symmetric(sigma);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_eigen(sigma));
    Eigen::VectorXd values = eig.eigenvalues();
    const double norm = values.cwiseAbs().maxCoeff();
    if (values.minCoeff() < -1e-10 * norm) {
        throw Error(ErrorCode::NotPsd, "matrix has a negative eigenvalue");
    }
    values = values.cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd& vecs = eig.eigenvectors();
    Eigen::MatrixXd root = vecs * values.asDiagonal() * vecs.transpose();
    root = 0.5 * (root + root.transpose()).eval();
    return from_eigen(root);
}

SquareMatrix cov_cholesky(const SquareMatrix& sigma) {
    check_symmetric(sigma);
    const Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(sigma));
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPsd, "matrix is not positive definite");
    }
    return from_eigen(llt.matrixL().toDenseMatrix());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct DataGenerator::Factors {
    // Transposed factors: a row of noise e' times F' gives (F e)'.
    Eigen::MatrixXd pre_t;
    Eigen::MatrixXd post_t;
};

DataGenerator::DataGenerator(const SimulationModel& model) : model_(model) {
    validate(model_);
    pre_cov_ = build_cov({model_.cov_scenario, model_.pre_param, 1.0}, model_.p);
    post_cov_ = build_cov({model_.cov_scenario, model_.post_param, model_.delta2}, model_.p);
    factors_ = std::make_unique<Factors>();
    factors_->pre_t = to_eigen(factor(pre_cov_, model_.sqrt_method)).transpose();
    factors_->post_t = to_eigen(factor(post_cov_, model_.sqrt_method)).transpose();
}

DataGenerator::~DataGenerator() = default;
DataGenerator::DataGenerator(DataGenerator&&) noexcept = default;
DataGenerator& DataGenerator::operator=(DataGenerator&&) noexcept = default;

Dataset DataGenerator::generate(std::uint64_t seed) const {
    const auto n = static_cast<Eigen::Index>(model_.n);
    const auto p = static_cast<Eigen::Index>(model_.p);
    const Eigen::Index change = model_.tau_star ? static_cast<Eigen::Index>(*model_.tau_star) : n;

    std::mt19937_64 rng(seed);
    RowMatrix noise(n, p);
    if (model_.error_dist == ErrorDist::Normal) {
        std::normal_distribution<double> draw;
        for (Eigen::Index k = 0; k < n * p; ++k) noise.data()[k] = draw(rng);
    } else {
        std::student_t_distribution<double> draw(9.0);
        const double unit = 1.0 / std::sqrt(9.0 / 7.0);
        for (Eigen::Index k = 0; k < n * p; ++k) noise.data()[k] = draw(rng) * unit;
    }

    RowMatrix x(n, p);
    x.topRows(change).noalias() = noise.topRows(change) * factors_->pre_t;
    if (change < n) {
        x.bottomRows(n - change).noalias() = noise.bottomRows(n - change) * factors_->post_t;
        const double shift = model_.delta1 / std::sqrt(static_cast<double>(model_.p));
        x.bottomRows(n - change).array() += shift;
    }
    return Dataset(model_.n, model_.p, std::vector<double>(x.data(), x.data() + n * p));
}

Dataset gen_dataset(const SimulationModel& model) {
    return DataGenerator(model).generate(model.seed);
}

ExperimentReport run_experiment(const SimulationModel& model, std::size_t reps, double alpha,
                                double lambda, std::size_t parallelism) {
    if (reps == 0) throw Error(ErrorCode::BadParam, "reps must be at least 1");
    const DataGenerator gen(model);

    ExperimentReport report;
    report.rep_count = reps;
    report.records.resize(reps);

    const auto run_one = [&](std::size_t r) {
        const Analysis a = analyze(gen.generate(mix_seed(model.seed, r)), alpha, lambda);
        ReplicationRecord& rec = report.records[r];
        rec.z_mean = a.test.z_mean;
        rec.z_cov = a.test.z_cov;
        rec.t_n = a.test.t_n;
        rec.trace_hat = a.test.trace_hat;
        for (std::size_t m = 0; m < a.baselines.size(); ++m) {
            rec.reject[m] = a.baselines[m].reject;
            rec.tau_hat[m] = a.baselines[m].tau_hat.value_or(0);
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, reps);
    if (workers == 1) {
        for (std::size_t r = 0; r < reps; ++r) run_one(r);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < reps; r += workers) run_one(r);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    // Ordered reduction over replications.
    const double count = static_cast<double>(reps);
    for (std::size_t m = 0; m < std::size(kAllMethods); ++m) {
        MethodSummary s;
        s.method = kAllMethods[m];
        double abs_err = 0.0;
        for (const auto& rec : report.records) {
            if (rec.reject[m]) ++s.rejections;
            if (model.tau_star) {
                const auto est = static_cast<double>(rec.tau_hat[m]);
                abs_err += std::abs(est - static_cast<double>(*model.tau_star));
            }
        }
        s.rejection_rate = static_cast<double>(s.rejections) / count;
        s.mc_stderr = std::sqrt(s.rejection_rate * (1.0 - s.rejection_rate) / count);
        if (model.tau_star) s.mean_abs_error = abs_err / count;
        report.methods.push_back(s);
    }
    report.rejection_rate = report.methods.front().rejection_rate;
    report.mc_stderr = report.methods.front().mc_stderr;
    report.mean_abs_error = report.methods.front().mean_abs_error;
    return report;
}

}  // namespace cpjoint
