#include <doctest.h>

#include "drb/divergence.hpp"
#include "drb/errors.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace drb;

TEST_CASE("DiscreteCloud validation and coordinate quantiles") {
    CHECK_THROWS_AS(DiscreteCloud(std::vector<std::vector<double>>{}), invalid_parameter);
    CHECK_THROWS_AS(DiscreteCloud({{1.0, 2.0}, {3.0}}), invalid_parameter);
    CHECK_THROWS_AS(DiscreteCloud(std::vector<std::vector<double>>{{std::nan("")}}),
                    invalid_parameter);

    const DiscreteCloud c({{3.0, 0.0}, {1.0, 5.0}});
    CHECK(c.size() == 2);
    CHECK(c.dimension() == 2);
    const QuantileGrid q0 = c.coordinate_quantiles(0);
    CHECK(q0[0] == 1.0);
    CHECK(q0[1] == 3.0);
}

TEST_CASE("1-D Wasserstein distance") {
    const QuantileGrid f({0.0, 2.0});
    CHECK(wasserstein_1d(f, f, 2.0) == 0.0);
    CHECK(wasserstein_1d(f.shifted(1.5), f, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(wasserstein_1d(f.shifted(-1.5), f, 3.0) == doctest::Approx(1.5).epsilon(1e-12));

    const QuantileGrid g({1.0, 5.0});
    CHECK(wasserstein_1d(f, g, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

    CHECK_THROWS_AS(wasserstein_1d(f, QuantileGrid({0.0, 1.0, 2.0}), 2.0), invalid_parameter);
    CHECK_THROWS_AS(wasserstein_1d(f, g, 0.5), invalid_parameter);
}

TEST_CASE("1-D Wasserstein triangle inequality on random grids") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> a(20), b(20), c(20);
        for (std::size_t i = 0; i < 20; ++i) {
            a[i] = noise(rng);
            b[i] = noise(rng);
            c[i] = noise(rng);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::sort(c.begin(), c.end());
        const QuantileGrid qa(a), qb(b), qc(c);
        const double ab = wasserstein_1d(qa, qb, 2.0);
        const double bc = wasserstein_1d(qb, qc, 2.0);
        const double ac = wasserstein_1d(qa, qc, 2.0);
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("1-D Bregman-Wasserstein divergence") {
    const QuantileGrid g({-1.0, 0.5, 2.0});
    const BregmanGenerator quad = BregmanGenerator::quadratic(1.0);
    CHECK(bregman_wasserstein_1d(g, g, quad) == 0.0);
    const double c = 0.8;
    CHECK(bregman_wasserstein_1d(g.shifted(c), g, quad) == doctest::Approx(c * c).epsilon(1e-14));

    // quartic case is asymmetric: B(1,0) = 1, B(0,1) = 3
    const BregmanGenerator quart = BregmanGenerator::quartic();
    const QuantileGrid one = QuantileGrid::constant(4, 1.0);
    const QuantileGrid zero = QuantileGrid::constant(4, 0.0);
    CHECK(bregman_wasserstein_1d(one, zero, quart) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bregman_wasserstein_1d(zero, one, quart) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("exhaustive transport oracle on hand examples") {
    const DiscreteCloud x({{0.0, 0.0}, {1.0, 1.0}});
    const DiscreteCloud y({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(discrete_ot_oracle(x, x, NormPowerCost{2.0, 2.0}) == 0.0);
    CHECK(discrete_ot_oracle(x, y, NormPowerCost{2.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(discrete_ot_oracle(x, DiscreteCloud({{0.0, 0.0}}), NormPowerCost{2.0, 2.0}),
                    invalid_parameter);
    std::vector<std::vector<double>> big(10, std::vector<double>{0.0});
    CHECK_THROWS_AS(discrete_ot_oracle(DiscreteCloud(big), DiscreteCloud(big),
                                       NormPowerCost{2.0, 2.0}),
                    capacity_error);
}

TEST_CASE("1-D transport oracle matches the comonotonic formula") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> noise(0.0, 2.0);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 2 + rng() % 5;
        std::vector<std::vector<double>> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            xs.push_back({noise(rng)});
            ys.push_back({noise(rng)});
        }
        const DiscreteCloud cx(xs), cy(ys);
        const double oracle = discrete_ot_oracle(cx, cy, NormPowerCost{2.0, 2.0});
        const double direct = wasserstein_1d(cx.coordinate_quantiles(0), cy.coordinate_quantiles(0),
                                             2.0);
        CHECK(std::abs(oracle - direct) <= 1e-12 * (1.0 + std::abs(direct)));

        // identity Mahalanobis cost is the squared 2-norm transport cost
        const double mahal = discrete_ot_oracle(cx, cy, MahalanobisCost{{1.0}});
        CHECK(std::abs(mahal - direct * direct) <= 1e-12 * (1.0 + direct * direct));

        // quadratic separable Bregman cost likewise
        const double breg = discrete_ot_oracle(
            cx, cy, SeparableBregmanCost{{BregmanGenerator::quadratic(1.0)}});
        CHECK(std::abs(breg - direct * direct) <= 1e-12 * (1.0 + direct * direct));
    }
}

TEST_CASE("transport cost validation") {
    const DiscreteCloud x({{0.0, 0.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(discrete_ot_oracle(x, x, NormPowerCost{0.5, 2.0}), invalid_parameter);
    CHECK_THROWS_AS(discrete_ot_oracle(x, x, MahalanobisCost{{1.0, -1.0}}), invalid_parameter);
    CHECK_THROWS_AS(discrete_ot_oracle(x, x, MahalanobisCost{{1.0}}), invalid_parameter);
    CHECK_THROWS_AS(discrete_ot_oracle(
                        x, x, SeparableBregmanCost{{BregmanGenerator::quadratic(1.0)}}),
                    invalid_parameter);
}
