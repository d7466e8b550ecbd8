#include "drb/config.hpp"

#include "drb/choquet.hpp"
#include "drb/errors.hpp"
#include "drb/expression.hpp"
#include "drb/worstcase.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace drb {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& why) {
    throw invalid_parameter("config: " + why);
}

const json& require_object(const json& j, const char* what) {
    if (!j.is_object()) schema_error(std::string(what) + " must be an object");
    return j;
}

/// The choice fields ("reference", "risk", ...) must hold exactly one variant key.
std::pair<std::string, const json*> single_variant(const json& j, const char* what) {
    require_object(j, what);
    if (j.size() != 1) {
        schema_error(std::string(what) + " must contain exactly one variant key");
    }
    const auto it = j.begin();
    return {it.key(), &it.value()};
}

double require_number(const json& j, const char* what) {
    if (!j.is_number()) schema_error(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<double> require_number_array(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) {
        schema_error(std::string(what) + " must be a non-empty array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(require_number(v, what));
    return out;
}

MarginalSpec parse_marginal(const json& j) {
    auto [key, body] = single_variant(j, "marginal");
    if (key == "normal") {
        return MarginalSpec::normal(require_number(body->at("mu"), "mu"),
                                    require_number(body->at("sigma"), "sigma"));
    }
    if (key == "weibull") {
        return MarginalSpec::weibull(require_number(body->at("lambda"), "lambda"),
                                     require_number(body->at("k"), "k"));
    }
    if (key == "log_normal") {
        return MarginalSpec::log_normal(require_number(body->at("mu"), "mu"),
                                        require_number(body->at("sigma"), "sigma"));
    }
    schema_error("unknown marginal kind '" + key + "'");
}

ReferenceModel parse_reference(const json& j) {
    auto [key, body] = single_variant(j, "reference");
    if (key == "builtin") {
        if (*body != "portfolio") schema_error("unknown builtin reference");
        return portfolio_reference_model();
    }
    if (key == "model") {
        ReferenceModel model;
        const json& marginals = body->at("marginals");
        if (!marginals.is_array() || marginals.empty()) {
            schema_error("reference.model.marginals must be a non-empty array");
        }
        for (const auto& m : marginals) model.marginals.push_back(parse_marginal(m));
        auto [ckey, cbody] = single_variant(body->at("copula"), "copula");
        if (ckey == "independent") {
            model.copula = CopulaSpec::independent();
        } else if (ckey == "student_t") {
            model.copula = CopulaSpec::student_t(require_number(cbody->at("df"), "df"),
                                                 require_number(cbody->at("rho"), "rho"));
        } else {
            schema_error("unknown copula kind '" + ckey + "'");
        }
        return model;
    }
    schema_error("unknown reference variant '" + key + "'");
}

AggregationSpec parse_aggregation(const json& j) {
    auto [key, body] = single_variant(j, "aggregation");
    if (key == "builtin") {
        if (*body != "portfolio") schema_error("unknown builtin aggregation");
        return portfolio_aggregation();
    }
    if (key == "linear") {
        std::vector<double> beta = require_number_array(body->at("beta"), "beta");
        const double a = body->contains("a") ? require_number(body->at("a"), "a") : 2.0;
        return AggregationSpec::linear(std::move(beta), a);
    }
    if (key == "expression") {
        const std::size_t m = body->at("m").get<std::size_t>();
        std::vector<double> beta;
        if (body->contains("beta")) beta = require_number_array(body->at("beta"), "beta");
        const std::size_t n = m + beta.size();
        const double a = body->contains("a") ? require_number(body->at("a"), "a") : 2.0;
        const double k = require_number(body->at("k"), "k");
        const double l = require_number(body->at("l"), "l");
        AggregationSpec::NonlinearFn fn;
        if (m > 0) {
            Expression expr = Expression::parse(body->at("nonlinear").get<std::string>(), m);
            fn = [expr](std::span<const double> x) { return expr.evaluate(x); };
        }
        return AggregationSpec(n, m, std::move(fn), std::move(beta), a, k, l);
    }
    schema_error("unknown aggregation variant '" + key + "'");
}

DistortionWeight parse_risk(const json& j) {
    auto [key, body] = single_variant(j, "risk");
    if (key == "es") return make_es_gamma(require_number(body->at("alpha"), "alpha"));
    if (key == "ier") return make_ier_gamma(require_number(body->at("alpha"), "alpha"));
    if (key == "piecewise") {
        const json& segs = body->at("segments");
        if (!segs.is_array() || segs.empty()) {
            schema_error("risk.piecewise.segments must be a non-empty array");
        }
        std::vector<GammaSegment> out;
        for (const auto& s : segs) {
            out.push_back({require_number(s.at("lo"), "lo"), require_number(s.at("hi"), "hi"),
                           require_number(s.at("value"), "value")});
        }
        return make_piecewise_gamma(std::move(out));
    }
    schema_error("unknown risk variant '" + key + "'");
}

BregmanGenerator parse_generator(const json& j) {
    auto [key, body] = single_variant(j, "phi");
    if (key == "quadratic") {
        return BregmanGenerator::quadratic(require_number(body->at("scale"), "scale"));
    }
    if (key == "quartic") return BregmanGenerator::quartic();
    schema_error("unknown generator kind '" + key + "'");
}

UncertaintySpec parse_uncertainty(const json& j) {
    auto [key, body] = single_variant(j, "uncertainty");
    if (key == "wasserstein") {
        WassersteinUncertainty u;
        u.epsilon = require_number(body->at("epsilon"), "epsilon");
        if (body->contains("k")) u.lipschitz_k = require_number(body->at("k"), "k");
        if (body->contains("beta_norm")) {
            u.beta_norm = require_number(body->at("beta_norm"), "beta_norm");
        }
        return u;
    }
    if (key == "mahalanobis") {
        MahalanobisUncertainty u;
        u.q_diag = require_number_array(body->at("q_diag"), "q_diag");
        u.epsilon = require_number(body->at("epsilon"), "epsilon");
        return u;
    }
    if (key == "separable") {
        SeparableUncertainty u;
        const json& phis = body->at("phis");
        if (!phis.is_array() || phis.empty()) {
            schema_error("uncertainty.separable.phis must be a non-empty array");
        }
        for (const auto& p : phis) u.phis.push_back(parse_generator(p));
        u.epsilon = require_number(body->at("epsilon"), "epsilon");
        u.beta = require_number_array(body->at("beta"), "beta");
        return u;
    }
    if (key == "composable") {
        return ComposableUncertainty{parse_generator(body->at("phi")),
                                     require_number(body->at("epsilon"), "epsilon")};
    }
    schema_error("unknown uncertainty variant '" + key + "'");
}

} // namespace

RunConfig load_run_config(const nlohmann::json& j) {
    require_object(j, "config");
    for (const auto& [key, value] : j.items()) {
        static_cast<void>(value);
        if (key != "reference" && key != "aggregation" && key != "risk" &&
            key != "uncertainty" && key != "grid_m" && key != "mc_samples" && key != "seed") {
            schema_error("unknown top-level key '" + key + "'");
        }
    }
    try {
        RunConfig config{parse_reference(j.at("reference")),
                         parse_aggregation(j.at("aggregation")), parse_risk(j.at("risk")),
                         parse_uncertainty(j.at("uncertainty"))};
        if (j.contains("grid_m")) config.grid_m = j.at("grid_m").get<std::size_t>();
        if (j.contains("mc_samples")) config.mc_samples = j.at("mc_samples").get<std::size_t>();
        if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
        if (config.grid_m < 2) schema_error("grid_m must be at least 2");
        if (config.mc_samples < 2) schema_error("mc_samples must be at least 2");
        if (config.reference.dimension() != config.aggregation.dimension()) {
            schema_error("reference dimension does not match aggregation dimension");
        }
        return config;
    } catch (const nlohmann::json::exception& e) {
        schema_error(e.what()); // missing/mistyped keys are schema errors
    }
}

RunConfig load_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) schema_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        schema_error(std::string("JSON parse failure: ") + e.what());
    }
    return load_run_config(j);
}

PipelineData run_pipeline(const RunConfig& config) {
    DiscreteCloud samples = sample_reference(config.reference, config.mc_samples, config.seed);
    std::vector<double> aggregated(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        aggregated[i] = config.aggregation.evaluate(samples.point(i));
    }
    QuantileGrid f_agg = quantile_from_samples(aggregated, config.grid_m);
    return PipelineData{std::move(samples), std::move(aggregated), std::move(f_agg)};
}

BoundReport compute_bounds(const RunConfig& config, const PipelineData& data) {
    struct Visitor {
        const RunConfig& config;
        const PipelineData& data;

        BoundReport operator()(const WassersteinUncertainty& u) const {
            const double k = u.lipschitz_k.value_or(config.aggregation.lipschitz_k());
            const double bn = u.beta_norm.value_or(config.aggregation.beta_norm());
            return wasserstein_bounds(data.f_agg, config.gamma, bn, k, u.epsilon);
        }
        BoundReport operator()(const MahalanobisUncertainty& u) const {
            return mahalanobis_bounds(data.f_agg, config.gamma, config.aggregation,
                                      MahalanobisSpec(u.q_diag), u.epsilon);
        }
        BoundReport operator()(const SeparableUncertainty& u) const {
            const std::size_t n = config.aggregation.dimension();
            if (u.phis.size() != n || u.beta.size() != n) {
                throw invalid_parameter(
                    "config: separable phis/beta must match the dimension");
            }
            std::vector<QuantileGrid> marginals;
            marginals.reserve(n);
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<double> column(data.samples.size());
                for (std::size_t i = 0; i < column.size(); ++i) {
                    column[i] = data.samples.point(i)[c];
                }
                marginals.push_back(quantile_from_samples(column, config.grid_m));
            }
            return separable_bregman_bounds(marginals, config.gamma, u.phis, u.beta,
                                            u.epsilon);
        }
        BoundReport operator()(const ComposableUncertainty& u) const {
            BoundReport out;
            out.method = BoundMethod::ComposableUpper;
            out.reference_risk = choquet_integral(data.f_agg, config.gamma);
            out.budget_units = "bregman-budget";
            if (u.epsilon <= 0.0) {
                out.case_kind = config.gamma.is_non_decreasing()
                                    ? WorstCaseKind::GammaNonDecreasing
                                    : WorstCaseKind::GammaNonNegative;
                out.lower = out.upper = out.reference_risk;
                out.lambda_lower = out.lambda_upper =
                    std::numeric_limits<double>::infinity();
                out.lower_curve = out.upper_curve = data.f_agg;
                return out;
            }
            SolveReport solved = solve_lambda(data.f_agg, config.gamma, u.phi, u.epsilon);
            out.case_kind = solved.case_kind;
            // the reference law is itself feasible, so it is the trivial lower bound
            out.lower = out.reference_risk;
            out.lambda_lower = std::numeric_limits<double>::infinity();
            out.lower_curve = data.f_agg;
            out.upper = solved.worst_risk;
            out.lambda_upper = solved.lambda_star;
            out.pre_projection_upper =
                pre_projection_curve(data.f_agg, config.gamma, u.phi, solved.lambda_star);
            out.upper_curve = std::move(solved.worst_curve);
            return out;
        }
    };
    return std::visit(Visitor{config, data}, config.uncertainty);
}

namespace {

const char* method_name(BoundMethod m) {
    switch (m) {
    case BoundMethod::WassersteinLipschitz: return "wasserstein-lipschitz";
    case BoundMethod::SeparableBregman: return "separable-bregman";
    case BoundMethod::Mahalanobis: return "mahalanobis";
    case BoundMethod::ComposableUpper: return "composable-upper";
    }
    return "unknown";
}

const char* case_name(WorstCaseKind k) {
    return k == WorstCaseKind::GammaNonDecreasing ? "gamma-non-decreasing"
                                                  : "gamma-non-negative";
}

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

std::string canonical_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json bound_report_to_json(const BoundReport& report, bool include_curves) {
    nlohmann::json j;
    j["method"] = method_name(report.method);
    j["case"] = case_name(report.case_kind);
    j["budget_units"] = report.budget_units;
    j["reference_risk"] = report.reference_risk;
    j["lower"] = report.lower;
    j["upper"] = report.upper;
    j["lambda_lower"] = finite_or_null(report.lambda_lower);
    j["lambda_upper"] = finite_or_null(report.lambda_upper);
    if (!report.lambda_lower_components.empty()) {
        nlohmann::json lo = nlohmann::json::array();
        nlohmann::json up = nlohmann::json::array();
        for (double v : report.lambda_lower_components) lo.push_back(finite_or_null(v));
        for (double v : report.lambda_upper_components) up.push_back(finite_or_null(v));
        j["lambda_lower_components"] = std::move(lo);
        j["lambda_upper_components"] = std::move(up);
    }
    if (include_curves && report.lower_curve.has_value() && report.upper_curve.has_value()) {
        j["lower_curve"] = std::vector<double>(report.lower_curve->values().begin(),
                                               report.lower_curve->values().end());
        j["upper_curve"] = std::vector<double>(report.upper_curve->values().begin(),
                                               report.upper_curve->values().end());
    }
    return j;
}

} // namespace drb
