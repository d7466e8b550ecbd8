#include <doctest.h>

#include "drb/choquet.hpp"
#include "drb/divergence.hpp"
#include "drb/errors.hpp"
#include "drb/sampling.hpp"
#include "drb/worstcase.hpp"

#include <cmath>
#include <vector>

using namespace drb;

namespace {

QuantileGrid uniform_grid(std::size_t m) {
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) {
        v[j] = (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * static_cast<double>(m));
    }
    return QuantileGrid(std::move(v));
}

QuantileGrid normal_grid(std::size_t m) {
    const MarginalSpec n01 = MarginalSpec::normal(0.0, 1.0);
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double u = (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * static_cast<double>(m));
        v[j] = n01.quantile(u);
    }
    return QuantileGrid(std::move(v));
}

} // namespace

TEST_CASE("candidate curve for a constant weight is a uniform shift") {
    const QuantileGrid f = normal_grid(200);
    const DistortionWeight one = make_piecewise_gamma({{0.0, 1.0, 2.0}});
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    const double lambda = 1.5;
    const QuantileGrid cand = candidate_quantile(f, one, quad, lambda);
    for (std::size_t j = 0; j < f.resolution(); ++j) {
        CHECK(std::abs(cand[j] - (f[j] + 2.0 / (2.0 * lambda))) <= 1e-12);
    }
}

TEST_CASE("candidate curve for ES is the tail shift") {
    const QuantileGrid f = normal_grid(400);
    const DistortionWeight es = make_es_gamma(0.95);
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    const double delta = 0.7;
    const double lambda = es.l2_norm() / (2.0 * delta);
    const QuantileGrid cand = candidate_quantile(f, es, quad, lambda);
    for (std::size_t j = 0; j < f.resolution(); ++j) {
        const double expect = f[j] + (f.midpoint(j) > 0.95 ? delta * 20.0 / es.l2_norm() : 0.0);
        CHECK(std::abs(cand[j] - expect) <= 1e-12);
    }
    // the unprojected curve coincides with the candidate when gamma is monotone
    const std::vector<double> raw = pre_projection_curve(f, es, quad, lambda);
    for (std::size_t j = 0; j < f.resolution(); ++j) CHECK(std::abs(raw[j] - cand[j]) <= 1e-12);
}

TEST_CASE("solve_lambda closed form for ES under the quadratic generator") {
    const QuantileGrid f = normal_grid(2000);
    const DistortionWeight es = make_es_gamma(0.95);
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    const SolveReport rep = solve_lambda(f, es, quad, 1.0);
    CHECK(rep.lambda_star == doctest::Approx(std::sqrt(20.0) / 2.0).epsilon(1e-12));
    const double ref = choquet_integral(f, es);
    CHECK(rep.worst_risk == doctest::Approx(ref + std::sqrt(20.0)).epsilon(1e-12));
    CHECK(rep.case_kind == WorstCaseKind::GammaNonDecreasing);
    CHECK(rep.constraint_residual <= 1e-10);
}

TEST_CASE("worst risk collapses to the reference as the budget vanishes") {
    const QuantileGrid f = normal_grid(500);
    const DistortionWeight es = make_es_gamma(0.9);
    const SolveReport rep = solve_lambda(f, es, BregmanGenerator::quadratic(1.0), 1e-12);
    CHECK(std::abs(rep.worst_risk - choquet_integral(f, es)) <= 1e-5);

    CHECK_THROWS_AS(solve_lambda(f, es, BregmanGenerator::quadratic(1.0), 0.0), invalid_parameter);
}

TEST_CASE("quartic generator: residual on budget and oracle agreement") {
    const QuantileGrid f = uniform_grid(40);
    const DistortionWeight es = make_es_gamma(0.9);
    const BregmanGenerator quart = BregmanGenerator::quartic();
    const double eps = 0.01;
    const SolveReport rep = solve_lambda(f, es, quart, eps);
    CHECK(rep.constraint_residual <= 1e-10 * (1.0 + eps));
    CHECK(rep.worst_risk > choquet_integral(f, es));
    const double oracle = worstcase_brute_oracle(f, es, quart, eps);
    CHECK(std::abs(rep.worst_risk - oracle) <= 5e-3 * (1.0 + std::abs(rep.worst_risk)));
}

TEST_CASE("brute oracle sanity") {
    const QuantileGrid f = normal_grid(40);
    const DistortionWeight es = make_es_gamma(0.9);
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    CHECK(worstcase_brute_oracle(f, es, quad, 0.0) ==
          doctest::Approx(choquet_integral(f, es)).epsilon(1e-15));
    const double oracle = worstcase_brute_oracle(f, es, quad, 0.25);
    const double closed = choquet_integral(f, es) + 0.5 * es.l2_norm();
    CHECK(std::abs(oracle - closed) <= 5e-3 * (1.0 + std::abs(closed)));

    CHECK_THROWS_AS(worstcase_brute_oracle(normal_grid(60), es, quad, 0.1), capacity_error);
    CHECK_THROWS_AS(worstcase_brute_oracle(f, make_ier_gamma(0.75), quad, 0.1), invalid_parameter);
}

TEST_CASE("non-monotone non-negative weight goes through the projection") {
    const QuantileGrid f = normal_grid(40);
    const DistortionWeight inv_s = make_piecewise_gamma({{0.0, 0.2, 3.0},
                                                         {0.2, 0.4, 1.5},
                                                         {0.4, 0.6, 0.0},
                                                         {0.6, 0.8, 3.0},
                                                         {0.8, 1.0, 4.5}});
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    const SolveReport rep = solve_lambda(f, inv_s, quad, 0.5);
    CHECK(rep.case_kind == WorstCaseKind::GammaNonNegative);
    CHECK(rep.constraint_residual <= 1e-8);
    const double oracle = worstcase_brute_oracle(f, inv_s, quad, 0.5);
    CHECK(std::abs(rep.worst_risk - oracle) <= 5e-3 * (1.0 + std::abs(rep.worst_risk)));

    // projection really pooled: raw curve differs from the candidate somewhere
    const std::vector<double> raw = pre_projection_curve(f, inv_s, quad, rep.lambda_star);
    double max_diff = 0.0;
    for (std::size_t j = 0; j < f.resolution(); ++j) {
        max_diff = std::max(max_diff, std::abs(raw[j] - rep.worst_curve[j]));
    }
    CHECK(max_diff > 1e-6);
}

TEST_CASE("weights in neither structural case are rejected") {
    const QuantileGrid f = normal_grid(50);
    const DistortionWeight bad = make_piecewise_gamma(
        {{0.0, 0.3, -1.0}, {0.3, 0.7, 1.0}, {0.7, 1.0, -1.0}});
    CHECK_THROWS_AS(solve_lambda(f, bad, BregmanGenerator::quadratic(1.0), 0.5),
                    unsupported_distortion);
}

TEST_CASE("risk increases and the multiplier decreases along a budget ladder") {
    const QuantileGrid f = normal_grid(100);
    const DistortionWeight es = make_es_gamma(0.9);
    const BregmanGenerator quart = BregmanGenerator::quartic();
    double prev_risk = choquet_integral(f, es);
    double prev_lambda = 1e300;
    for (double eps : {0.01, 0.1, 0.5, 2.0}) {
        const SolveReport rep = solve_lambda(f, es, quart, eps);
        CHECK(rep.worst_risk > prev_risk);
        CHECK(rep.lambda_star < prev_lambda);
        prev_risk = rep.worst_risk;
        prev_lambda = rep.lambda_star;
    }
}

TEST_CASE("candidate risk decreases in lambda") {
    const QuantileGrid f = normal_grid(100);
    const DistortionWeight es = make_es_gamma(0.9);
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    double prev = 1e300;
    for (double lambda : {0.2, 0.5, 1.0, 3.0, 10.0}) {
        const double risk = choquet_integral(candidate_quantile(f, es, quad, lambda), es);
        CHECK(risk < prev);
        prev = risk;
    }
}
