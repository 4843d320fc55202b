#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cpjoint/dataset.hpp"
#include "cpjoint/inference.hpp"
#include "cpjoint/model.hpp"

namespace cpjoint {

/// Dense symmetric p x p matrix, row-major.
struct SquareMatrix {
    std::size_t dim = 0;
    std::vector<double> entries;

    double operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
    double& operator()(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

struct CovSpec {
    CovScenario scenario = CovScenario::Ar1;
    double param = 0.3;  ///< rho for AR1, r for BLOCK5; must lie in (-1, 1)
    double scale = 1.0;  ///< delta2 > 0
};

/// scale * base. AR1: rho^|i-j|. BLOCK5: unit diagonal, r inside each of the floor(p/5)
/// consecutive 5 x 5 blocks, identity on the remainder.
SquareMatrix build_cov(const CovSpec& spec, std::size_t p);

/// Symmetric square root R with R R = sigma. Throws Error{NotPsd}.
SquareMatrix cov_sqrt(const SquareMatrix& sigma);

/// Lower-triangular L with L L' = sigma. Throws Error{NotPsd}.
SquareMatrix cov_cholesky(const SquareMatrix& sigma);

/// splitmix64 finalizer; per-replication seeds are mix_seed(seed, rep).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Draws datasets from one SimulationModel. Covariance factors are computed once.
class DataGenerator {
public:
    explicit DataGenerator(const SimulationModel& model);
    ~DataGenerator();
    DataGenerator(DataGenerator&&) noexcept;
    DataGenerator& operator=(DataGenerator&&) noexcept;

    const SimulationModel& model() const noexcept { return model_; }
    const SquareMatrix& pre_cov() const noexcept { return pre_cov_; }
    const SquareMatrix& post_cov() const noexcept { return post_cov_; }

    /// Deterministic in seed.
    Dataset generate(std::uint64_t seed) const;

private:
    struct Factors;
    SimulationModel model_;
    SquareMatrix pre_cov_;
    SquareMatrix post_cov_;
    std::unique_ptr<Factors> factors_;
};

/// Validates the model (Error{BadParam}) and draws one dataset from model.seed.
Dataset gen_dataset(const SimulationModel& model);

struct MethodSummary {
    Method method = Method::Fisher;
    std::size_t rejections = 0;
    double rejection_rate = 0.0;
    double mc_stderr = 0.0;  ///< sqrt(rate (1 - rate) / reps)
    std::optional<double> mean_abs_error;
};

/// Per-replication quantities kept for calibration diagnostics.
struct ReplicationRecord {
    double z_mean = 0.0;
    double z_cov = 0.0;
    double t_n = 0.0;
    double trace_hat = 0.0;
    bool reject[4] = {false, false, false, false};
    std::size_t tau_hat[4] = {0, 0, 0, 0};
};

struct ExperimentReport {
    std::size_t rep_count = 0;
    double rejection_rate = 0.0;  ///< Fisher
    double mc_stderr = 0.0;
    std::optional<double> mean_abs_error;  ///< Fisher, present iff the model has a change
    std::vector<MethodSummary> methods;    ///< kAllMethods order
    std::vector<ReplicationRecord> records;
};

/// Runs `reps` replications with seeds mix_seed(model.seed, r). Results do not depend on
/// `parallelism`. Throws Error{BadParam} for reps == 0.
ExperimentReport run_experiment(const SimulationModel& model, std::size_t reps,
                                double alpha = kDefaultAlpha, double lambda = kDefaultLambda,
                                std::size_t parallelism = 1);

}  // namespace cpjoint
