#include "drb/config.hpp"
#include "drb/errors.hpp"
#include "drb/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitAssumption = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path; // empty = stdout
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
    std::optional<std::size_t> samples;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_config = true) {
    auto* config = cmd->add_option("--config", opts.config_path, "JSON run configuration");
    if (needs_config) config->required();
    cmd->add_option("--out", opts.out_path, "output file (default stdout)");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--grid", opts.grid, "override the quantile grid resolution");
    cmd->add_option("--samples", opts.samples, "override the Monte Carlo sample count");
}

int write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitConfig;
    }
    out << payload;
    return kExitOk;
}

drb::RunConfig load_config(const CommonOptions& opts) {
    drb::RunConfig config = drb::load_run_config_file(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.grid) config.grid_m = *opts.grid;
    if (opts.samples) config.mc_samples = *opts.samples;
    if (config.grid_m < 2 || config.mc_samples < 2) {
        throw drb::invalid_parameter("config: overrides must keep grid/samples >= 2");
    }
    return config;
}

/// Map computation-phase exceptions onto the documented exit codes.
template <typename Fn>
int run_guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const drb::unsupported_distortion& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const drb::invalid_parameter& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return kExitAssumption;
    } catch (const drb::no_solution_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const drb::capacity_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const drb::internal_consistency_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_bound(const CommonOptions& opts, const std::string& format) {
    drb::RunConfig config = load_config(opts);
    return run_guarded([&] {
        const drb::PipelineData data = drb::run_pipeline(config);
        const drb::BoundReport report = drb::compute_bounds(config, data);
        std::string payload;
        if (format == "json") {
            payload = drb::bound_report_to_json(report).dump(2) + "\n";
        } else {
            std::ostringstream csv;
            csv << "metric,value\n";
            csv << "reference_risk," << drb::canonical_double(report.reference_risk) << "\n";
            csv << "lower," << drb::canonical_double(report.lower) << "\n";
            csv << "upper," << drb::canonical_double(report.upper) << "\n";
            csv << "lambda_lower," << drb::canonical_double(report.lambda_lower) << "\n";
            csv << "lambda_upper," << drb::canonical_double(report.lambda_upper) << "\n";
            payload = csv.str();
        }
        return write_output(opts.out_path, payload);
    });
}

int cmd_worst_case(const CommonOptions& opts) {
    drb::RunConfig config = load_config(opts);
    return run_guarded([&] {
        const drb::PipelineData data = drb::run_pipeline(config);
        const drb::BoundReport report = drb::compute_bounds(config, data);
        if (!report.lower_curve || !report.upper_curve) {
            std::cerr << "numerical failure: the configured method reports no curves\n";
            return kExitNumerical;
        }
        std::ostringstream csv;
        csv << "u,reference_quantile,lower_curve,upper_curve,pre_projection_upper\n";
        const drb::QuantileGrid& f = data.f_agg;
        for (std::size_t j = 0; j < f.resolution(); ++j) {
            const double pre = report.pre_projection_upper.empty()
                                   ? (*report.upper_curve)[j]
                                   : report.pre_projection_upper[j];
            csv << drb::canonical_double(f.midpoint(j)) << ','
                << drb::canonical_double(f[j]) << ','
                << drb::canonical_double((*report.lower_curve)[j]) << ','
                << drb::canonical_double((*report.upper_curve)[j]) << ','
                << drb::canonical_double(pre) << "\n";
        }
        return write_output(opts.out_path, csv.str());
    });
}

int cmd_sample(const CommonOptions& opts) {
    drb::RunConfig config = load_config(opts);
    return run_guarded([&] {
        const drb::PipelineData data = drb::run_pipeline(config);
        std::ostringstream csv;
        csv << "g\n";
        for (double v : data.aggregated) csv << drb::canonical_double(v) << "\n";
        return write_output(opts.out_path, csv.str());
    });
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    drb::VerifyResult result;
    try {
        result = drb::run_verify_suite(suite, seed);
    } catch (const drb::invalid_parameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    for (const drb::VerifyAssertion& a : result.assertions) {
        std::cout << "suite=" << result.suite << " assertion=" << a.name
                  << " status=" << (a.passed ? "pass" : "fail")
                  << " detail=" << drb::canonical_double(a.detail) << "\n";
    }
    return result.all_passed() ? kExitOk : kExitNumerical;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Worst-case risk bounds under transport-divergence uncertainty"};
    app.require_subcommand(1);

    CommonOptions bound_opts;
    std::string bound_format = "json";
    CLI::App* bound = app.add_subcommand("bound", "compute lower/upper risk bounds");
    add_common(bound, bound_opts);
    bound->add_option("--format", bound_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CommonOptions wc_opts;
    CLI::App* wc = app.add_subcommand("worst-case", "emit worst-case quantile curves");
    add_common(wc, wc_opts);

    CommonOptions sample_opts;
    CLI::App* sample = app.add_subcommand("sample", "emit aggregated reference samples");
    add_common(sample, sample_opts);

    std::string suite;
    std::uint64_t verify_seed = 42;
    CLI::App* verify = app.add_subcommand("verify", "run an oracle self-check suite");
    verify->add_option("--suite", suite, "isotonic | separability | inclusion | oracle-worstcase | table1")
        ->required();
    verify->add_option("--seed", verify_seed, "suite seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound->parsed()) return cmd_bound(bound_opts, bound_format);
        if (wc->parsed()) return cmd_worst_case(wc_opts);
        if (sample->parsed()) return cmd_sample(sample_opts);
        if (verify->parsed()) return cmd_verify(suite, verify_seed);
    } catch (const drb::invalid_parameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitConfig;
}
