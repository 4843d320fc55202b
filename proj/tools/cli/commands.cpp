#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpjoint/error.hpp"
#include "cpjoint/simulation.hpp"
#include "csv.hpp"

namespace cpjoint::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* command_name(Command c) {
    switch (c) {
        case Command::Detect: return "detect";
        case Command::Localize: return "localize";
        case Command::Simulate: return "simulate";
    }
    return "?";
}

const char* scenario_name(CovScenario s) { return s == CovScenario::Ar1 ? "ar1" : "block5"; }
const char* dist_name(ErrorDist d) { return d == ErrorDist::Normal ? "normal" : "t9"; }
const char* sqrt_name(SqrtMethod m) { return m == SqrtMethod::Spectral ? "spectral" : "cholesky"; }

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

Json config_json(const RunConfig& c) {
    Json j;
    j["command"] = command_name(c.command);
    if (c.command == Command::Simulate) {
        j["scenario"] = scenario_name(c.scenario);
        j["n"] = c.n;
        j["p"] = c.p;
        j["tau_frac"] = c.tau_frac ? Json(*c.tau_frac) : Json(nullptr);
        j["delta1"] = c.delta1;
        j["delta2"] = c.delta2;
        j["pre_param"] = c.pre_param;
        j["post_param"] = c.post_param;
        j["dist"] = dist_name(c.dist);
        j["sqrt"] = sqrt_name(c.sqrt_method);
        j["reps"] = c.reps;
        j["seed"] = c.seed;
    } else {
        j["input"] = c.input_path.value_or("");
    }
    j["alpha"] = c.alpha;
    j["lambda"] = c.lambda;
    j["format"] = c.output_format == OutputFormat::Json ? "json" : "csv";
    j["emit_profile"] = c.emit_profile;
    // parallelism is left out on purpose: it never changes the results.
    return j;
}

Json report_header(const RunConfig& c) {
    Json j;
    j["spec_version"] = kReportVersion;
    j["config"] = config_json(c);
    return j;
}

void emit_flat_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv) {
    for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].first;
    out << '\n';
    for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].second;
    out << '\n';
}

void require_input(const RunConfig& c) {
    if (!c.input_path) throw Error(ErrorCode::BadParam, "--input is required");
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        body();
        return 0;
    } catch (const Error& e) {
        err << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace

int cmd_detect(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_input(config);
        const Dataset data = read_csv(*config.input_path);
        const TestOutcome t = detect(data, config.alpha);

        if (config.output_format == OutputFormat::Csv) {
            emit_flat_csv(out, {{"n", std::to_string(data.n())},
                                {"p", std::to_string(data.p())},
                                {"m_n", fmt(t.m_n)},
                                {"v_n", fmt(t.v_n)},
                                {"trace_hat", fmt(t.trace_hat)},
                                {"sigma1_sq", fmt(t.sigma1_sq)},
                                {"sigma2_sq", fmt(t.sigma2_sq)},
                                {"z_mean", fmt(t.z_mean)},
                                {"z_cov", fmt(t.z_cov)},
                                {"log_p_mean", fmt(t.log_p_mean)},
                                {"log_p_cov", fmt(t.log_p_cov)},
                                {"p_mean", fmt(t.p_mean)},
                                {"p_cov", fmt(t.p_cov)},
                                {"t_n", fmt(t.t_n)},
                                {"p_combined", fmt(t.p_combined)},
                                {"alpha", fmt(t.alpha)},
                                {"reject", t.reject ? "true" : "false"}});
            return;
        }
        Json j = report_header(config);
        j["n"] = data.n();
        j["p"] = data.p();
        j["m_n"] = t.m_n;
        j["v_n"] = t.v_n;
        j["trace_hat"] = t.trace_hat;
        j["sigma1_sq"] = t.sigma1_sq;
        j["sigma2_sq"] = t.sigma2_sq;
        j["z_mean"] = t.z_mean;
        j["z_cov"] = t.z_cov;
        j["log_p_mean"] = t.log_p_mean;
        j["log_p_cov"] = t.log_p_cov;
        j["p_mean"] = t.p_mean;
        j["p_cov"] = t.p_cov;
        j["t_n"] = t.t_n;
        j["p_combined"] = t.p_combined;
        j["alpha"] = t.alpha;
        j["reject"] = t.reject;
        out << j.dump(2) << '\n';
    });
}

int cmd_localize(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        require_input(config);
        const Dataset data = read_csv(*config.input_path);
        const LocalizationOutcome loc = localize(data, config.lambda);

        if (config.output_format == OutputFormat::Csv) {
            if (config.emit_profile) {
                out << "tau,t_n\n";
                for (std::size_t k = 0; k < loc.profile.size(); ++k)
                    out << loc.profile.tau_min + k << ',' << fmt(loc.profile.values[k]) << '\n';
            } else {
                emit_flat_csv(out, {{"n", std::to_string(data.n())},
                                    {"p", std::to_string(data.p())},
                                    {"tau_hat", std::to_string(loc.tau_hat)},
                                    {"lambda", fmt(loc.lambda)},
                                    {"grid_lo", std::to_string(loc.grid_lo)},
                                    {"grid_hi", std::to_string(loc.grid_hi)}});
            }
            return;
        }
        Json j = report_header(config);
        j["n"] = data.n();
        j["p"] = data.p();
        j["tau_hat"] = loc.tau_hat;
        j["lambda"] = loc.lambda;
        j["grid_lo"] = loc.grid_lo;
        j["grid_hi"] = loc.grid_hi;
        if (config.emit_profile) j["profile"] = loc.profile.values;
        out << j.dump(2) << '\n';
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (config.input_path) throw Error(ErrorCode::BadParam, "simulate does not take --input");
        if (config.reps == 0) throw Error(ErrorCode::BadParam, "--reps must be positive");
        if (config.delta1.empty() || config.delta2.empty())
            throw Error(ErrorCode::BadParam, "empty delta grid");
        if (config.tau_frac && !(*config.tau_frac > 0.0 && *config.tau_frac < 1.0))
            throw Error(ErrorCode::BadParam, "--tau-frac must lie in (0, 1)");

        SimulationModel base;
        base.n = config.n;
        base.p = config.p;
        if (config.tau_frac)
            base.tau_star = static_cast<std::size_t>(std::floor(*config.tau_frac *
                                                                static_cast<double>(config.n)));
        base.cov_scenario = config.scenario;
        base.pre_param = config.pre_param;
        base.post_param = config.post_param;
        base.error_dist = config.dist;
        base.sqrt_method = config.sqrt_method;
        base.seed = config.seed;

        struct Row {
            double d1, d2;
            ExperimentReport report;
        };
        std::vector<Row> rows;
        for (double d1 : config.delta1) {
            for (double d2 : config.delta2) {
                SimulationModel m = base;
                m.delta1 = d1;
                m.delta2 = d2;
                if (config.dump_data && rows.empty()) {
                    std::ofstream f(*config.dump_data);
                    if (!f) throw Error(ErrorCode::IoError, "cannot write " + *config.dump_data);
                    write_csv(f, DataGenerator(m).generate(mix_seed(m.seed, 0)));
                }
                rows.push_back({d1, d2,
                                run_experiment(m, config.reps, config.alpha, config.lambda,
                                               config.parallelism)});
            }
        }

        if (config.output_format == OutputFormat::Csv) {
            out << "delta1,delta2,method,reps,rejections,rejection_rate,mc_stderr,mean_abs_error\n";
            for (const auto& r : rows) {
                for (const auto& s : r.report.methods) {
                    out << fmt(r.d1) << ',' << fmt(r.d2) << ',' << method_name(s.method) << ','
                        << r.report.rep_count << ',' << s.rejections << ','
                        << fmt(s.rejection_rate) << ',' << fmt(s.mc_stderr) << ','
                        << (s.mean_abs_error ? fmt(*s.mean_abs_error) : "") << '\n';
                }
            }
            return;
        }
        Json j = report_header(config);
        Json results = Json::array();
        for (const auto& r : rows) {
            Json item;
            item["delta1"] = r.d1;
            item["delta2"] = r.d2;
            item["tau_star"] = base.tau_star ? Json(*base.tau_star) : Json(nullptr);
            item["rep_count"] = r.report.rep_count;
            item["rejection_rate"] = r.report.rejection_rate;
            item["mc_stderr"] = r.report.mc_stderr;
            item["mean_abs_error"] =
                r.report.mean_abs_error ? Json(*r.report.mean_abs_error) : Json(nullptr);
            Json methods = Json::array();
            for (const auto& s : r.report.methods) {
                Json mj;
                mj["method"] = method_name(s.method);
                mj["rejections"] = s.rejections;
                mj["rejection_rate"] = s.rejection_rate;
                mj["mc_stderr"] = s.mc_stderr;
                mj["mean_abs_error"] = s.mean_abs_error ? Json(*s.mean_abs_error) : Json(nullptr);
                methods.push_back(std::move(mj));
            }
            item["methods"] = std::move(methods);
            results.push_back(std::move(item));
        }
        j["results"] = std::move(results);
        out << j.dump(2) << '\n';
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    std::string input;
    double tau_frac = 0.0;
    std::string delta1 = "0", delta2 = "1";

    CLI::App app{"Joint mean and covariance changepoint detection"};
    app.require_subcommand(1);

    const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::Json},
                                                      {"csv", OutputFormat::Csv}};
    const std::map<std::string, CovScenario> scenarios{{"ar1", CovScenario::Ar1},
                                                       {"block5", CovScenario::Block5}};
    const std::map<std::string, ErrorDist> dists{{"normal", ErrorDist::Normal},
                                                 {"t9", ErrorDist::T9Standardized}};
    const std::map<std::string, SqrtMethod> sqrts{{"spectral", SqrtMethod::Spectral},
                                                  {"cholesky", SqrtMethod::Cholesky}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", config.alpha, "Significance level")->capture_default_str();
        sub->add_option("--lambda", config.lambda, "Boundary trimming fraction")
            ->capture_default_str();
        sub->add_option("--format", config.output_format, "json or csv")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto* detect_cmd = app.add_subcommand("detect", "Test for a change");
    auto* localize_cmd = app.add_subcommand("localize", "Estimate the changepoint");
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo size/power experiment");
    for (auto* sub : {detect_cmd, localize_cmd}) {
        add_common(sub);
        sub->add_option("--input", input, "CSV file, one observation per row")->required();
    }
    localize_cmd->add_flag("--emit-profile", config.emit_profile, "Include the T_n(tau) profile");

    add_common(simulate_cmd);
    simulate_cmd->add_option("--input", input, "Not accepted by simulate");
    simulate_cmd->add_option("--scenario", config.scenario, "ar1 or block5")
        ->transform(CLI::CheckedTransformer(scenarios, CLI::ignore_case));
    simulate_cmd->add_option("--n", config.n)->capture_default_str();
    simulate_cmd->add_option("--p", config.p)->capture_default_str();
    auto* tau_opt = simulate_cmd->add_option("--tau-frac", tau_frac,
                                             "Change at floor(tau_frac * n); omit for the null");
    simulate_cmd->add_option("--delta1", delta1, "Mean shift, or comma-separated grid")
        ->capture_default_str();
    simulate_cmd->add_option("--delta2", delta2, "Covariance scale, or comma-separated grid")
        ->capture_default_str();
    simulate_cmd->add_option("--pre-param", config.pre_param)->capture_default_str();
    simulate_cmd->add_option("--post-param", config.post_param)->capture_default_str();
    simulate_cmd->add_option("--dist", config.dist, "normal or t9")
        ->transform(CLI::CheckedTransformer(dists, CLI::ignore_case));
    simulate_cmd->add_option("--sqrt", config.sqrt_method, "spectral or cholesky")
        ->transform(CLI::CheckedTransformer(sqrts, CLI::ignore_case));
    simulate_cmd->add_option("--reps", config.reps)->capture_default_str();
    simulate_cmd->add_option("--seed", config.seed)->capture_default_str();
    simulate_cmd->add_option("--parallelism", config.parallelism)->capture_default_str();
    simulate_cmd->add_option("--dump-data", config.dump_data,
                             "Write replication 0 of the first setting as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? 0 : 1;
    }

    if (!input.empty()) config.input_path = input;
    if (tau_opt->count() > 0) config.tau_frac = tau_frac;

    if (const char* env = std::getenv("CPJOINT_THREADS"); env && *env) {
        std::size_t threads = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), threads);
        if (ec != std::errc() || ptr != s.data() + s.size() || threads == 0) {
            err << "error: BAD_PARAM: CPJOINT_THREADS must be a positive integer\n";
            return 1;
        }
        config.parallelism = threads;
    }

    auto parse_grid = [&](const std::string& text, std::vector<double>& dst) {
        dst.clear();
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            const std::string item =
                text.substr(start, comma == std::string::npos ? comma : comma - start);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
                throw Error(ErrorCode::BadParam, "bad grid value '" + item + "'");
            dst.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    };

    if (*detect_cmd) {
        config.command = Command::Detect;
        return cmd_detect(config, out, err);
    }
    if (*localize_cmd) {
        config.command = Command::Localize;
        return cmd_localize(config, out, err);
    }
    config.command = Command::Simulate;
    const int rc = guarded(err, [&] {
        parse_grid(delta1, config.delta1);
        parse_grid(delta2, config.delta2);
    });
    if (rc != 0) return rc;
    return cmd_simulate(config, out, err);
}

}  // namespace cpjoint::cli
