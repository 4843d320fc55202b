#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpjoint/inference.hpp"
#include "cpjoint/model.hpp"

namespace cpjoint::cli {

inline constexpr const char* kReportVersion = "1.0";

enum class Command { Detect, Localize, Simulate };
enum class OutputFormat { Json, Csv };

struct RunConfig {
    Command command = Command::Detect;
    std::optional<std::string> input_path;
    double alpha = kDefaultAlpha;
    double lambda = kDefaultLambda;

    // simulate
    CovScenario scenario = CovScenario::Ar1;
    std::size_t n = 200;
    std::size_t p = 100;
    std::optional<double> tau_frac;  ///< tau_star = floor(tau_frac * n); absent: null model
    std::vector<double> delta1{0.0};
    std::vector<double> delta2{1.0};
    double pre_param = 0.3;
    double post_param = 0.5;
    ErrorDist dist = ErrorDist::Normal;
    SqrtMethod sqrt_method = SqrtMethod::Spectral;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::size_t parallelism = 1;
    std::optional<std::string> dump_data;

    OutputFormat output_format = OutputFormat::Json;
    bool emit_profile = false;
};

/// Each returns the process exit code: 0 on success, 1 on any failure (message on err).
int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_localize(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. CPJOINT_THREADS, when set, overrides --parallelism.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cpjoint::cli
