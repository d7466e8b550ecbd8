#include <doctest.h>

#include "drb/bounds.hpp"
#include "drb/choquet.hpp"
#include "drb/errors.hpp"
#include "drb/sampling.hpp"
#include "drb/worstcase.hpp"

#include <cmath>
#include <vector>

using namespace drb;

namespace {

QuantileGrid normal_grid(std::size_t m, double mu = 0.0, double sigma = 1.0) {
    const MarginalSpec spec = MarginalSpec::normal(mu, sigma);
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double u = (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * static_cast<double>(m));
        v[j] = spec.quantile(u);
    }
    return QuantileGrid(std::move(v));
}

} // namespace

TEST_CASE("Lipschitz constant bound") {
    const std::vector<double> beta{-1.0, -4.0};
    // portfolio constants: L = sqrt(13), ||beta||_2 = sqrt(17), n = 4
    const double k = lipschitz_bound(std::sqrt(13.0), beta, 2.0, 4);
    CHECK(k == doctest::Approx(std::sqrt(13.0) + std::sqrt(17.0)).epsilon(1e-12));
    CHECK(k == doctest::Approx(7.72871).epsilon(1e-5));

    // linear case: the bound collapses to ||beta||_b
    CHECK(lipschitz_bound(0.0, beta, 2.0, 2) == doctest::Approx(std::sqrt(17.0)).epsilon(1e-12));

    // a = 1 => b = infinity: factor n^{1/b} = 1, bound = max norm when it dominates L
    const std::vector<double> beta2{1.0, -5.0};
    CHECK(lipschitz_bound(2.0, beta2, 1.0, 2) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("Wasserstein bounds reproduce the portfolio closed forms") {
    const QuantileGrid f = normal_grid(2000);
    const double k = std::sqrt(30.0);
    const double bn = std::sqrt(17.0);

    const DistortionWeight es = make_es_gamma(0.95);
    const BoundReport r1 = wasserstein_bounds(f, es, bn, k, 0.3);
    CHECK(r1.upper - r1.reference_risk ==
          doctest::Approx(std::sqrt(30.0 / 0.05) * 0.3).epsilon(1e-12));
    CHECK(r1.lower - r1.reference_risk ==
          doctest::Approx(std::sqrt(17.0 / 0.05) * 0.3).epsilon(1e-12));

    const DistortionWeight ier = make_ier_gamma(0.75);
    const BoundReport r2 = wasserstein_bounds(f, ier, bn, k, 1.0);
    CHECK(r2.upper - r2.reference_risk == doctest::Approx(std::sqrt(60.0 / 0.25)).epsilon(1e-12));
    CHECK(r2.lower - r2.reference_risk == doctest::Approx(std::sqrt(34.0 / 0.25)).epsilon(1e-12));
    CHECK(r2.case_kind == WorstCaseKind::GammaNonDecreasing);
}

TEST_CASE("linear aggregation gives a tight sandwich") {
    const QuantileGrid f = normal_grid(500);
    const AggregationSpec lin = AggregationSpec::linear({2.0, -1.0, 0.5});
    const DistortionWeight es = make_es_gamma(0.9);
    for (double eps : {0.1, 1.0, 10.0}) {
        const BoundReport r = wasserstein_bounds(f, es, lin, eps);
        CHECK(std::abs(r.upper - r.lower) <= 1e-9 * (1.0 + std::abs(r.upper)));
    }
    // zero radius collapses to the reference risk
    const BoundReport r0 = wasserstein_bounds(f, es, lin, 0.0);
    CHECK(r0.lower == r0.upper);
    CHECK(r0.upper == doctest::Approx(r0.reference_risk).epsilon(1e-15));
}

TEST_CASE("separable bounds on the two-component normal example") {
    const std::vector<QuantileGrid> marginals{normal_grid(10000), normal_grid(10000)};
    const std::vector<BregmanGenerator> phis{BregmanGenerator::quadratic(1.0),
                                             BregmanGenerator::quadratic(1.0)};
    const DistortionWeight es = make_es_gamma(0.95);
    const BoundReport r = separable_bregman_bounds(marginals, es, phis, {1.0, 1.0}, 1.0);
    CHECK(r.upper == doctest::Approx(13.0696).epsilon(5e-3));
    CHECK(r.lower == doctest::Approx(10.4499).epsilon(5e-3));
    CHECK(r.lambda_upper_components.size() == 2);

    // the analytic gap cap dominates the observed gap
    const double cap = separable_gap_bound({1.0, 1.0}, {0.5, 0.5}, r.lambda_upper_components,
                                           r.lambda_lower_components, es);
    CHECK(cap == doctest::Approx((2.0 - std::sqrt(2.0)) * es.l2_norm()).epsilon(1e-6));
    CHECK(r.upper - r.lower <= cap + 1e-3);
}

TEST_CASE("separable edge cases") {
    const std::vector<QuantileGrid> one{normal_grid(300)};
    const std::vector<BregmanGenerator> phi1{BregmanGenerator::quadratic(1.0)};
    const DistortionWeight es = make_es_gamma(0.9);
    const BoundReport r1 = separable_bregman_bounds(one, es, phi1, {2.0}, 0.5);
    CHECK(std::abs(r1.upper - r1.lower) <= 1e-12 * (1.0 + std::abs(r1.upper)));

    const std::vector<QuantileGrid> two{normal_grid(300), normal_grid(300)};
    const std::vector<BregmanGenerator> phi2{BregmanGenerator::quadratic(1.0),
                                             BregmanGenerator::quadratic(1.0)};
    const BoundReport r0 = separable_bregman_bounds(two, es, phi2, {0.0, 0.0}, 0.5);
    CHECK(r0.lower == 0.0);
    CHECK(r0.upper == 0.0);

    CHECK_THROWS_AS(separable_bregman_bounds(two, es, phi2, {1.0, -1.0}, 0.5), invalid_parameter);
    CHECK_THROWS_AS(separable_bregman_bounds(two, make_ier_gamma(0.75), phi2, {1.0, 1.0}, 0.5),
                    invalid_parameter);
}

TEST_CASE("separable gap bound degenerate inputs") {
    const DistortionWeight es = make_es_gamma(0.9);
    CHECK(separable_gap_bound({1.0, 1.0}, {0.5, 0.5}, {2.0, 2.0}, {2.0, 2.0}, es) == 0.0);
    CHECK(separable_gap_bound({0.0, 0.0}, {0.5, 0.5}, {2.0, 2.0}, {1.0, 1.0}, es) == 0.0);
}

TEST_CASE("Mahalanobis bounds") {
    const QuantileGrid f = normal_grid(2000);
    const double k = std::sqrt(30.0);
    const double bn = std::sqrt(17.0);
    const DistortionWeight es = make_es_gamma(0.95);

    // Q = identity with budget delta^2 reproduces the Wasserstein bounds at radius delta
    const double delta = 0.3;
    const MahalanobisSpec ident({1.0, 1.0, 1.0, 1.0});
    const BoundReport m = mahalanobis_bounds(f, es, bn, k, ident, delta * delta);
    const BoundReport w = wasserstein_bounds(f, es, bn, k, delta);
    CHECK(std::abs(m.upper - w.upper) <= 1e-9 * (1.0 + std::abs(w.upper)));
    CHECK(std::abs(m.lower - w.lower) <= 1e-9 * (1.0 + std::abs(w.lower)));

    // anisotropic Q: extreme eigenvalues rescale the per-side budgets
    const MahalanobisSpec q({1.0, 1.0, 1.0, 4.0});
    const BoundReport r = mahalanobis_bounds(f, es, bn, k, q, 1.0);
    CHECK(r.upper - r.reference_risk ==
          doctest::Approx(k * std::sqrt(1.0 / 1.0) * es.l2_norm()).epsilon(1e-12));
    CHECK(r.lower - r.reference_risk ==
          doctest::Approx(bn * std::sqrt(1.0 / 4.0) * es.l2_norm()).epsilon(1e-12));

    const BoundReport z = mahalanobis_bounds(f, es, bn, k, q, 0.0);
    CHECK(z.lower == z.upper);

    CHECK_THROWS_AS(MahalanobisSpec({1.0, 0.0}), invalid_parameter);
}

TEST_CASE("composable upper bound") {
    const QuantileGrid f = normal_grid(500);
    const DistortionWeight es = make_es_gamma(0.9);

    // quadratic composable generator is the plain univariate quadratic ball
    const double eps = 0.49;
    const double upper = composable_upper_bound(f, es, BregmanGenerator::quadratic(1.0), eps);
    const BoundReport w = wasserstein_bounds(f, es, 1.0, 1.0, std::sqrt(eps));
    CHECK(upper == doctest::Approx(w.upper).epsilon(1e-12));

    CHECK(composable_upper_bound(f, es, BregmanGenerator::quartic(), 0.0) ==
          doctest::Approx(choquet_integral(f, es)).epsilon(1e-15));

    const QuantileGrid small = normal_grid(40);
    const double quart = composable_upper_bound(small, es, BregmanGenerator::quartic(), 1.0);
    CHECK(quart >= choquet_integral(small, es));
    const double oracle = worstcase_brute_oracle(small, es, BregmanGenerator::quartic(), 1.0);
    CHECK(std::abs(quart - oracle) <= 5e-3 * (1.0 + std::abs(quart)));
}

TEST_CASE("Table 1 comparison") {
    const std::vector<QuantileGrid> marginals{normal_grid(1000), normal_grid(1000, 1.0, 2.0)};
    std::vector<double> agg_vals(1000);
    for (std::size_t j = 0; j < 1000; ++j) agg_vals[j] = marginals[0][j] + marginals[1][j];
    const QuantileGrid f_agg(agg_vals); // comonotone aggregate of the two marginals
    const AggregationSpec lin = AggregationSpec::linear({1.0, 1.0});
    const DistortionWeight es = make_es_gamma(0.95);

    const Table1Report rep = table1_compare(lin, es, marginals, f_agg, 0.5,
                                            MahalanobisSpec({1.0, 1.0}));
    // increments over the respective references obey the chain
    const double d_lo = rep.w_direct_lower - rep.reference_risk;
    const double d_up = rep.w_direct_upper - rep.reference_risk;
    // direct shifts: ||beta||_2 eps and sqrt(n) max-|beta| style upper via K = ||beta||_1
    CHECK(d_lo == doctest::Approx(std::sqrt(2.0) * es.l2_norm() * 0.5).epsilon(1e-9));
    double sep_ref = 0.0;
    for (const QuantileGrid& g : marginals) sep_ref += choquet_integral(g, es);
    const double s_lo = rep.w_sep_lower - sep_ref;
    const double s_up = rep.w_sep_upper - sep_ref;
    CHECK(s_lo <= d_lo + 1e-9);
    CHECK(d_lo <= d_up + 1e-12);
    CHECK(d_up <= s_up + 1e-9);
    CHECK(rep.has_mahalanobis);
    // identity-Q rows agree with the Wasserstein rows under the budget conversion
    CHECK(std::abs(rep.m_direct_lower - rep.w_direct_lower) <= 1e-9);
    CHECK(std::abs(rep.m_direct_upper - rep.w_direct_upper) <= 1e-9);
    CHECK(std::abs(rep.m_sep_lower - rep.w_sep_lower) <= 1e-9);
    CHECK(std::abs(rep.m_sep_upper - rep.w_sep_upper) <= 1e-9);
}

TEST_CASE("Table 1 collapses in dimension one") {
    const std::vector<QuantileGrid> marginals{normal_grid(500)};
    const AggregationSpec lin = AggregationSpec::linear({1.0});
    const DistortionWeight es = make_es_gamma(0.9);
    const Table1Report rep = table1_compare(lin, es, marginals, marginals[0], 0.7, std::nullopt);
    CHECK(rep.w_direct_lower == doctest::Approx(rep.w_sep_lower).epsilon(1e-9));
    CHECK(rep.w_direct_upper == doctest::Approx(rep.w_sep_upper).epsilon(1e-9));
    CHECK(rep.w_direct_lower == doctest::Approx(rep.w_direct_upper).epsilon(1e-9));
}
