#include "drb/verify.hpp"

#include "drb/bounds.hpp"
#include "drb/choquet.hpp"
#include "drb/divergence.hpp"
#include "drb/errors.hpp"
#include "drb/isotonic.hpp"
#include "drb/sampling.hpp"
#include "drb/witness.hpp"
#include "drb/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace drb {

bool VerifyResult::all_passed() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const VerifyAssertion& a) { return a.passed; });
}

namespace {

std::size_t scaled(std::size_t count, double scale) {
    const double s = std::max(1.0, static_cast<double>(count) * scale);
    return static_cast<std::size_t>(s);
}

std::vector<double> random_array(std::mt19937_64& rng, std::size_t m, double spread) {
    std::normal_distribution<double> dist(0.0, spread);
    std::vector<double> out(m);
    for (double& v : out) v = dist(rng);
    return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

VerifyResult verify_isotonic(std::uint64_t seed, double scale) {
    VerifyResult result{"isotonic", {}};
    std::mt19937_64 rng(seed);

    {
        double worst = 0.0;
        const std::size_t count = scaled(200, scale);
        std::uniform_int_distribution<std::size_t> size_dist(2, 500);
        for (std::size_t t = 0; t < count; ++t) {
            const std::vector<double> input = random_array(rng, size_dist(rng), 3.0);
            const IsotonicResult pava = isotonic_projection(input);
            worst = std::max(worst, max_abs_diff(pava.values, isotonic_maxmin_oracle(input)));
        }
        result.assertions.push_back({"pava-vs-maxmin", worst <= 1e-9, worst});
    }
    {
        double worst = 0.0;
        const std::size_t count = scaled(500, scale);
        std::uniform_int_distribution<std::size_t> size_dist(2, 12);
        for (std::size_t t = 0; t < count; ++t) {
            const std::vector<double> input = random_array(rng, size_dist(rng), 3.0);
            const IsotonicResult pava = isotonic_projection(input);
            worst =
                std::max(worst, max_abs_diff(pava.values, isotonic_partition_oracle(input)));
        }
        result.assertions.push_back({"pava-vs-partition", worst <= 1e-9, worst});
    }
    {
        // property battery
        double w_scaling = 0.0, w_shift = 0.0, w_blocks = 0.0, w_ordering = 0.0,
               w_orth = 0.0, w_dual = 0.0, w_idem = 0.0;
        const std::size_t count = scaled(1000, scale);
        std::uniform_int_distribution<std::size_t> size_dist(2, 60);
        std::uniform_real_distribution<double> pos(0.1, 4.0);
        std::normal_distribution<double> noise(0.0, 1.0);
        for (std::size_t t = 0; t < count; ++t) {
            const std::size_t m = size_dist(rng);
            const std::vector<double> f = random_array(rng, m, 2.0);
            const IsotonicResult iso = isotonic_projection(f);

            const double c = pos(rng);
            std::vector<double> scaled_in(f), expect(iso.values);
            for (double& v : scaled_in) v *= c;
            for (double& v : expect) v *= c;
            w_scaling = std::max(
                w_scaling, max_abs_diff(isotonic_projection(scaled_in).values, expect));

            const double shift = noise(rng);
            std::vector<double> shifted_in(f), shifted_expect(iso.values);
            for (double& v : shifted_in) v += shift;
            for (double& v : shifted_expect) v += shift;
            w_shift = std::max(
                w_shift, max_abs_diff(isotonic_projection(shifted_in).values, shifted_expect));

            for (const IsotonicBlock& blk : iso.blocks) {
                double mean = 0.0;
                for (std::size_t i = blk.start; i <= blk.end; ++i) mean += f[i];
                mean /= static_cast<double>(blk.end - blk.start + 1);
                w_blocks = std::max(w_blocks, std::abs(mean - blk.theta));
            }

            std::vector<double> g(f);
            for (double& v : g) v += std::abs(noise(rng));
            const IsotonicResult iso_g = isotonic_projection(g);
            for (std::size_t i = 0; i < m; ++i) {
                w_ordering = std::max(w_ordering, iso.values[i] - iso_g.values[i]);
            }

            double inner = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                inner += (f[i] - iso.values[i]) * iso.values[i];
            }
            w_orth = std::max(w_orth, std::abs(inner));

            std::vector<double> mono = random_array(rng, m, 1.0);
            std::sort(mono.begin(), mono.end());
            double dual = 0.0;
            for (std::size_t i = 0; i < m; ++i) dual += (f[i] - iso.values[i]) * mono[i];
            w_dual = std::max(w_dual, dual);

            w_idem = std::max(
                w_idem, max_abs_diff(isotonic_projection(iso.values).values, iso.values));
        }
        result.assertions.push_back({"scaling", w_scaling <= 1e-9, w_scaling});
        result.assertions.push_back({"shift", w_shift <= 1e-9, w_shift});
        result.assertions.push_back({"block-means", w_blocks <= 1e-9, w_blocks});
        result.assertions.push_back({"ordering", w_ordering <= 1e-9, w_ordering});
        result.assertions.push_back({"orthogonality", w_orth <= 1e-8, w_orth});
        result.assertions.push_back({"dual-inequality", w_dual <= 1e-8, w_dual});
        result.assertions.push_back({"idempotence", w_idem <= 1e-12, w_idem});
    }
    return result;
}

VerifyResult verify_separability(std::uint64_t seed, double scale) {
    VerifyResult result{"separability", {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> n_dist(2, 3);
    std::uniform_int_distribution<std::size_t> count_dist(2, 6);
    std::uniform_int_distribution<int> kind_dist(0, 1);
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    double worst = 0.0;
    const std::size_t trials = scaled(200, scale);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = n_dist(rng);
        const std::size_t big_n = count_dist(rng);
        // The identity decouples the coordinate couplings, which a single
        // point assignment can realize only when both clouds are comonotone
        // (every coordinate sorted by the same point ranks); draw such clouds.
        auto draw_cloud = [&] {
            std::vector<std::vector<double>> cols(n, std::vector<double>(big_n));
            for (auto& col : cols) {
                for (double& v : col) v = noise(rng);
                std::sort(col.begin(), col.end());
            }
            std::vector<std::vector<double>> pts(big_n, std::vector<double>(n));
            for (std::size_t j = 0; j < big_n; ++j) {
                for (std::size_t c = 0; c < n; ++c) pts[j][c] = cols[c][j];
            }
            return DiscreteCloud(std::move(pts));
        };
        const DiscreteCloud x = draw_cloud();
        const DiscreteCloud y = draw_cloud();
        std::vector<BregmanGenerator> phis;
        for (std::size_t i = 0; i < n; ++i) {
            phis.push_back(kind_dist(rng) == 0 ? BregmanGenerator::quadratic(scale_dist(rng))
                                               : BregmanGenerator::quartic());
        }
        const double joint = discrete_ot_oracle(x, y, SeparableBregmanCost{phis});
        double split = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            split += bregman_wasserstein_1d(x.coordinate_quantiles(i),
                                            y.coordinate_quantiles(i), phis[i]);
        }
        worst = std::max(worst, std::abs(joint - split));
    }
    result.assertions.push_back({"joint-equals-marginal-sum", worst <= 1e-8, worst});
    return result;
}

VerifyResult verify_inclusion_suite(std::uint64_t seed, double scale) {
    VerifyResult result{"inclusion", {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> n_dist(2, 3);
    std::uniform_int_distribution<std::size_t> count_dist(2, 6);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> eps_dist(0.2, 2.0);

    double w_exact = 0.0;
    double w_cost = 0.0;
    bool implications = true;
    bool infeasible_detected = true;
    const std::size_t trials = scaled(200, scale);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = n_dist(rng);
        const std::size_t big_n = count_dist(rng);
        std::vector<double> beta(n);
        double bn = 0.0;
        while (bn < 1e-3) {
            for (double& b : beta) b = noise(rng);
            bn = vector_norm(beta, 2.0);
        }
        const AggregationSpec agg = AggregationSpec::linear(beta);
        std::vector<std::vector<double>> pts(big_n, std::vector<double>(n));
        for (auto& p : pts) {
            for (double& v : p) v = noise(rng);
        }
        const DiscreteCloud x(std::move(pts));
        const double epsilon = eps_dist(rng);

        // random targets rescaled onto the full budget
        std::vector<double> targets(big_n);
        double norm = 0.0;
        for (std::size_t i = 0; i < big_n; ++i) {
            targets[i] = noise(rng);
            norm += targets[i] * targets[i];
        }
        norm = std::sqrt(norm / static_cast<double>(big_n));
        const double budget = agg.beta_norm() * epsilon;
        for (std::size_t i = 0; i < big_n; ++i) {
            targets[i] = agg.evaluate(x.point(i)) + targets[i] / norm * budget;
        }
        const DiscreteCloud z = construct_witness(x, agg, targets, epsilon);
        for (std::size_t i = 0; i < big_n; ++i) {
            const double gz = agg.evaluate(z.point(i));
            w_exact = std::max(w_exact,
                               std::abs(gz - targets[i]) / (1.0 + std::abs(targets[i])));
        }
        double cost = 0.0;
        for (std::size_t i = 0; i < big_n; ++i) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                const double d = z.point(i)[c] - x.point(i)[c];
                d2 += d * d;
            }
            cost += d2;
        }
        cost = std::sqrt(cost / static_cast<double>(big_n));
        w_cost = std::max(w_cost, cost - epsilon);

        const InclusionVerdict v = verify_inclusion(x, z, agg, epsilon);
        implications = implications && v.implication_holds && v.within_ball;

        try {
            std::vector<double> too_far(targets);
            for (std::size_t i = 0; i < big_n; ++i) {
                too_far[i] = agg.evaluate(x.point(i)) +
                             (targets[i] - agg.evaluate(x.point(i))) * 3.0;
            }
            construct_witness(x, agg, too_far, epsilon);
            infeasible_detected = false;
        } catch (const infeasible_target_error&) {
            // expected
        }
    }
    result.assertions.push_back({"witness-exactness", w_exact <= 1e-12, w_exact});
    result.assertions.push_back({"witness-feasibility", w_cost <= 1e-10, w_cost});
    result.assertions.push_back({"image-ball-implication", implications, 0.0});
    result.assertions.push_back(
        {"infeasible-target-rejected", infeasible_detected, 0.0});
    return result;
}

VerifyResult verify_oracle_worstcase(std::uint64_t seed, double scale) {
    VerifyResult result{"oracle-worstcase", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> eps_dist(0.05, 1.0);
    std::uniform_real_distribution<double> cut_dist(0.2, 0.8);
    std::uniform_real_distribution<double> val_dist(0.0, 3.0);
    std::uniform_real_distribution<double> scale_dist(0.5, 2.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    double worst = 0.0;
    const std::size_t trials = scaled(10, scale);
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> values = random_array(rng, 40, 1.0);
        std::sort(values.begin(), values.end());
        const QuantileGrid f(std::move(values));

        const double c1 = cut_dist(rng);
        const double c2 = c1 + (1.0 - c1) * cut_dist(rng);
        double v1 = val_dist(rng), v2 = val_dist(rng), v3 = val_dist(rng);
        if (v1 + v2 + v3 < 1e-6) v2 = 1.0;
        const DistortionWeight gamma =
            make_piecewise_gamma({{0.0, c1, v1}, {c1, c2, v2}, {c2, 1.0, v3}});

        const BregmanGenerator phi = (t % 2 == 0)
                                         ? BregmanGenerator::quadratic(scale_dist(rng))
                                         : BregmanGenerator::quartic();
        const double epsilon = eps_dist(rng);
        const SolveReport solved = solve_lambda(f, gamma, phi, epsilon);
        const double oracle = worstcase_brute_oracle(f, gamma, phi, epsilon, rng());
        const double rel =
            std::abs(solved.worst_risk - oracle) / (1.0 + std::abs(solved.worst_risk));
        worst = std::max(worst, rel);
    }
    result.assertions.push_back({"solver-vs-ascent-oracle", worst <= 5e-3, worst});
    return result;
}

VerifyResult verify_table1(std::uint64_t seed, double scale) {
    VerifyResult result{"table1", {}};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> n_dist(2, 4);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.0);
    std::uniform_real_distribution<double> alpha_dist(0.55, 0.98);
    std::uniform_real_distribution<double> eps_dist(0.05, 1.5);
    std::uniform_real_distribution<double> q_dist(0.3, 3.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    bool chain_ok = true;
    double w_equiv = 0.0;
    const std::size_t trials = scaled(100, scale);
    constexpr std::size_t kSamples = 400;
    constexpr std::size_t kGrid = 100;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = n_dist(rng);
        std::vector<double> beta(n);
        double bn = 0.0;
        while (bn < 1e-3) {
            for (double& b : beta) b = beta_dist(rng);
            bn = vector_norm(beta, 2.0);
        }
        const AggregationSpec agg = AggregationSpec::linear(beta);
        const DistortionWeight gamma = make_es_gamma(alpha_dist(rng));
        const double epsilon = eps_dist(rng);

        std::vector<std::vector<double>> pts(kSamples, std::vector<double>(n));
        for (auto& p : pts) {
            for (double& v : p) v = noise(rng);
        }
        const DiscreteCloud cloud(std::move(pts));
        std::vector<QuantileGrid> marginals;
        std::vector<double> aggregated(kSamples);
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<double> col(kSamples);
            for (std::size_t i = 0; i < kSamples; ++i) col[i] = cloud.point(i)[c];
            marginals.push_back(quantile_from_samples(col, kGrid));
        }
        for (std::size_t i = 0; i < kSamples; ++i) {
            aggregated[i] = agg.evaluate(cloud.point(i));
        }
        const QuantileGrid f_agg = quantile_from_samples(aggregated, kGrid);

        try {
            std::vector<double> q_diag(n);
            for (double& q : q_diag) q = q_dist(rng);
            table1_compare(agg, gamma, marginals, f_agg, epsilon,
                           MahalanobisSpec(q_diag));
        } catch (const internal_consistency_error&) {
            chain_ok = false;
        }

        // Q = identity must reproduce the Wasserstein rows under the
        // radius-to-budget conversion
        const BoundReport wass = wasserstein_bounds(f_agg, gamma, agg, epsilon);
        const BoundReport mah = mahalanobis_bounds(
            f_agg, gamma, agg, MahalanobisSpec(std::vector<double>(n, 1.0)),
            epsilon * epsilon);
        w_equiv = std::max(w_equiv, std::abs(wass.lower - mah.lower));
        w_equiv = std::max(w_equiv, std::abs(wass.upper - mah.upper));
    }
    result.assertions.push_back({"ordering-chain", chain_ok, 0.0});
    result.assertions.push_back({"identity-q-equivalence", w_equiv <= 1e-9, w_equiv});
    return result;
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"isotonic", "separability", "inclusion", "oracle-worstcase", "table1"};
}

VerifyResult run_verify_suite(const std::string& suite, std::uint64_t seed, double scale) {
    if (suite == "isotonic") return verify_isotonic(seed, scale);
    if (suite == "separability") return verify_separability(seed, scale);
    if (suite == "inclusion") return verify_inclusion_suite(seed, scale);
    if (suite == "oracle-worstcase") return verify_oracle_worstcase(seed, scale);
    if (suite == "table1") return verify_table1(seed, scale);
    throw invalid_parameter("run_verify_suite: unknown suite '" + suite + "'");
}

} // namespace drb
