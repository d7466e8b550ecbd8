#include <doctest.h>

#include "drb/aggregation.hpp"
#include "drb/bregman.hpp"
#include "drb/choquet.hpp"
#include "drb/distortion.hpp"
#include "drb/errors.hpp"
#include "drb/expression.hpp"
#include "drb/quantile_grid.hpp"
#include "drb/sampling.hpp"

#include <cmath>
#include <limits>
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

TEST_CASE("QuantileGrid validates its input") {
    CHECK_THROWS_AS(QuantileGrid(std::vector<double>{1.0}), invalid_parameter);
    CHECK_THROWS_AS(QuantileGrid(std::vector<double>{2.0, 1.0}), invalid_parameter);
    CHECK_THROWS_AS(QuantileGrid(std::vector<double>{0.0, std::nan("")}), invalid_parameter);
    CHECK_THROWS_AS(QuantileGrid(std::vector<double>{0.0, std::numeric_limits<double>::infinity()}),
                    invalid_parameter);
    const QuantileGrid g = QuantileGrid::constant(4, 2.5);
    CHECK(g.resolution() == 4);
    CHECK(g[3] == 2.5);
    CHECK(g.midpoint(0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g.mean() == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("QuantileGrid shift and sum require matching resolution") {
    const QuantileGrid g = uniform_grid(8);
    const QuantileGrid h = g.shifted(1.0);
    CHECK(h[0] == doctest::Approx(g[0] + 1.0).epsilon(1e-15));
    CHECK_THROWS_AS(g.plus(QuantileGrid::constant(4, 0.0)), invalid_parameter);
    const QuantileGrid s = g.plus(g);
    CHECK(s[5] == doctest::Approx(2.0 * g[5]).epsilon(1e-15));
}

TEST_CASE("quantile_from_samples uses the ceil-rank order statistic") {
    const std::vector<double> samples{4.0, 2.0, 1.0, 3.0};
    const QuantileGrid q = quantile_from_samples(samples, 2);
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 3.0);

    const std::vector<double> flat{7.0, 7.0, 7.0};
    const QuantileGrid c = quantile_from_samples(flat, 5);
    for (std::size_t j = 0; j < 5; ++j) CHECK(c[j] == 7.0);

    CHECK_THROWS_AS(quantile_from_samples(std::vector<double>{}, 4), invalid_parameter);
}

TEST_CASE("choquet integral of the uniform grid") {
    const QuantileGrid u = uniform_grid(1000);
    const DistortionWeight one = make_piecewise_gamma({{0.0, 1.0, 1.0}});
    CHECK(choquet_integral(u, one) == doctest::Approx(0.5).epsilon(1e-12));

    const DistortionWeight es = make_es_gamma(0.95);
    CHECK(choquet_integral(u, es) == doctest::Approx(0.975).epsilon(1.0 / 1000.0));
}

TEST_CASE("choquet integral of ES on a standard normal grid") {
    const QuantileGrid f = normal_grid(100000);
    const DistortionWeight es = make_es_gamma(0.95);
    CHECK(choquet_integral(f, es) == doctest::Approx(2.0627).epsilon(2e-3));
}

TEST_CASE("choquet integral is linear in the quantile grid") {
    const QuantileGrid a = uniform_grid(257);
    const QuantileGrid b = normal_grid(257);
    const DistortionWeight gamma = make_ier_gamma(0.8);
    const double lhs = choquet_integral(a.plus(b), gamma);
    const double rhs = choquet_integral(a, gamma) + choquet_integral(b, gamma);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("ES weight constants") {
    const DistortionWeight es = make_es_gamma(0.95);
    CHECK(std::abs(es.l2_norm() - std::sqrt(20.0)) <= 1e-12);
    CHECK(es.value_at(0.5) == 0.0);
    CHECK(es.value_at(0.96) == doctest::Approx(20.0).epsilon(1e-15));
    CHECK(es.is_non_decreasing());
    CHECK(es.is_non_negative());
    CHECK(es.integral() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(std::abs(make_es_gamma(0.5).l2_norm() - std::sqrt(2.0)) <= 1e-12);
    CHECK(make_es_gamma(0.75).value_at(0.8) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(make_es_gamma(0.0), invalid_parameter);
    CHECK_THROWS_AS(make_es_gamma(1.0), invalid_parameter);
}

TEST_CASE("IER weight constants") {
    const DistortionWeight ier = make_ier_gamma(0.75);
    CHECK(std::abs(ier.l2_norm() - std::sqrt(8.0)) <= 1e-12);
    CHECK(ier.value_at(0.1) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(ier.value_at(0.5) == 0.0);
    CHECK(ier.value_at(0.9) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(ier.is_non_decreasing());
    CHECK_FALSE(ier.is_non_negative());
    CHECK(std::abs(ier.integral()) <= 1e-12);
    CHECK(std::abs(make_ier_gamma(0.9).integral()) <= 1e-12);
    CHECK_THROWS_AS(make_ier_gamma(0.5), invalid_parameter);
}

TEST_CASE("piecewise inverse-S weight constants") {
    const DistortionWeight g = make_piecewise_gamma({{0.0, 0.2, 3.0},
                                                     {0.2, 0.4, 1.5},
                                                     {0.4, 0.6, 0.0},
                                                     {0.6, 0.8, 3.0},
                                                     {0.8, 1.0, 4.5}});
    CHECK(std::abs(g.l2_norm_squared() - 8.1) <= 1e-12);
    CHECK(std::abs(g.integral() - 2.4) <= 1e-12);
    CHECK_FALSE(g.is_non_decreasing());
    CHECK(g.is_non_negative());

    const DistortionWeight flat = make_piecewise_gamma({{0.0, 1.0, 1.0}});
    CHECK(flat.is_non_decreasing());

    CHECK_THROWS_AS(make_piecewise_gamma({{0.0, 0.5, 1.0}, {0.6, 1.0, 1.0}}), invalid_parameter);
    CHECK_THROWS_AS(make_piecewise_gamma({{0.0, 0.5, 1.0}, {0.4, 1.0, 1.0}}), invalid_parameter);
    CHECK_THROWS_AS(make_piecewise_gamma({{0.0, 1.0, 0.0}}), invalid_parameter);
}

TEST_CASE("Bregman generators") {
    const BregmanGenerator q1 = BregmanGenerator::quadratic(1.0);
    CHECK(q1.divergence(3.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(q1.phi_prime_inverse(q1.phi_prime(1.7)) == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(q1.kind() == GeneratorKind::Quadratic);
    CHECK(q1.quadratic_scale() == 1.0);

    const BregmanGenerator q4 = BregmanGenerator::quartic();
    CHECK(q4.divergence(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q4.divergence(0.0, 2.0) == doctest::Approx(48.0).epsilon(1e-15));
    CHECK(q4.phi_prime_inverse(q4.phi_prime(-1.3)) == doctest::Approx(-1.3).epsilon(1e-10));

    CHECK_THROWS_AS(BregmanGenerator::quadratic(0.0), invalid_parameter);
    CHECK_THROWS_AS(BregmanGenerator::custom([](double x) { return -x * x; },
                                             [](double x) { return -2.0 * x; },
                                             [](double y) { return -y / 2.0; }),
                    invalid_parameter);
}

TEST_CASE("aggregation norms and evaluation") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::isinf(conjugate_exponent(1.0)));
    const std::vector<double> v{3.0, -4.0};
    CHECK(vector_norm(v, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(vector_norm(v, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(4.0).epsilon(1e-15));

    const AggregationSpec lin = AggregationSpec::linear({3.0, 4.0});
    CHECK(lin.beta_norm() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lin.lipschitz_k() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lin.nonlinear_dimension() == 0);
    const std::vector<double> x{1.0, 2.0};
    CHECK(lin.evaluate(x) == doctest::Approx(11.0).epsilon(1e-15));
}

TEST_CASE("expression grammar evaluates piecewise-linear payoffs") {
    const Expression e = Expression::parse("x1 + 2*max(x2 - 5, 0)", 2);
    const std::vector<double> a{1.0, 7.0};
    const std::vector<double> b{1.0, 3.0};
    CHECK(e.evaluate(a) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(e.evaluate(b) == doctest::Approx(1.0).epsilon(1e-15));

    const Expression m = Expression::parse("min(-x1, 0.5) - (x2)*3", 2);
    const std::vector<double> c{-2.0, 1.0};
    CHECK(m.evaluate(c) == doctest::Approx(-2.5).epsilon(1e-15));

    CHECK_THROWS_AS(Expression::parse("x3 + 1", 2), invalid_parameter);
    CHECK_THROWS_AS(Expression::parse("1 +* 2", 2), invalid_parameter);
    CHECK_THROWS_AS(Expression::parse("max(x1)", 2), invalid_parameter);
    CHECK_THROWS_AS(Expression::parse("x1", 0), invalid_parameter);
    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(e.evaluate(wrong), invalid_parameter);
}
