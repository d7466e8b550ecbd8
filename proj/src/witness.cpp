#include "drb/witness.hpp"

#include "drb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace drb {

SupportBox::SupportBox(std::vector<double> lo_in, std::vector<double> hi_in)
    : lo(std::move(lo_in)), hi(std::move(hi_in)) {
    if (lo.size() != hi.size()) throw invalid_parameter("SupportBox: size mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] <= hi[i])) throw invalid_parameter("SupportBox: lo must not exceed hi");
    }
}

bool SupportBox::contains(std::span<const double> x_prefix) const {
    if (x_prefix.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (x_prefix[i] < lo[i] || x_prefix[i] > hi[i]) return false;
    }
    return true;
}

DiscreteCloud construct_witness(const DiscreteCloud& x_samples, const AggregationSpec& agg,
                                const std::vector<double>& z_target, double epsilon,
                                double p) {
    const std::size_t big_n = x_samples.size();
    if (z_target.size() != big_n) {
        throw invalid_parameter("construct_witness: one target per sample required");
    }
    if (x_samples.dimension() != agg.dimension()) {
        throw invalid_parameter("construct_witness: cloud/aggregation dimension mismatch");
    }
    if (!(p >= 1.0)) throw invalid_parameter("construct_witness: p must be >= 1");
    if (!(epsilon >= 0.0)) throw invalid_parameter("construct_witness: negative epsilon");

    const double beta_norm = agg.beta_norm();
    if (beta_norm == 0.0) {
        throw no_witness_error(
            "construct_witness: zero linear part, the image set degenerates");
    }

    // Feasibility: identity-coupling cost equals (mean |delta|^p)^{1/p} / ||beta||_b.
    double cost_acc = 0.0;
    std::vector<double> delta(big_n);
    for (std::size_t i = 0; i < big_n; ++i) {
        delta[i] = z_target[i] - agg.evaluate(x_samples.point(i));
        cost_acc += std::pow(std::abs(delta[i]), p);
    }
    const double target_norm = std::pow(cost_acc / static_cast<double>(big_n), 1.0 / p);
    if (target_norm > beta_norm * epsilon * (1.0 + 1e-12) + 1e-15) {
        throw infeasible_target_error("construct_witness: targets exceed the budget");
    }

    const std::vector<double>& beta = agg.beta();
    const std::size_t m = agg.nonlinear_dimension();
    const double a = agg.norm_exponent_a();
    const double b = agg.norm_exponent_b();

    std::vector<std::vector<double>> z_points = x_samples.points();
    if (a > 1.0) {
        // Dual direction sgn(beta_k)|beta_k|^{b/a}; its inner product with
        // beta is ||beta||_b^b, and its a-norm is ||beta||_b^{b/a}.
        std::vector<double> dir(beta.size());
        for (std::size_t k = 0; k < beta.size(); ++k) {
            dir[k] = std::copysign(std::pow(std::abs(beta[k]), b / a), beta[k]);
        }
        const double denom = std::pow(beta_norm, b);
        for (std::size_t i = 0; i < big_n; ++i) {
            const double t = delta[i] / denom;
            for (std::size_t k = 0; k < beta.size(); ++k) {
                z_points[i][m + k] += dir[k] * t;
            }
        }
    } else {
        // a = 1: move only the coordinate with the largest coefficient.
        std::size_t j_star = 0;
        for (std::size_t k = 1; k < beta.size(); ++k) {
            if (std::abs(beta[k]) > std::abs(beta[j_star])) j_star = k;
        }
        for (std::size_t i = 0; i < big_n; ++i) {
            z_points[i][m + j_star] += delta[i] / beta[j_star];
        }
    }
    return DiscreteCloud(std::move(z_points));
}

InclusionVerdict verify_inclusion(const DiscreteCloud& x_samples, const DiscreteCloud& z_samples,
                                  const AggregationSpec& agg, double epsilon,
                                  const std::optional<SupportBox>& support, double p) {
    if (x_samples.size() != z_samples.size()) {
        throw invalid_parameter("verify_inclusion: clouds must have equal size");
    }
    const std::size_t big_n = x_samples.size();

    InclusionVerdict v{};
    v.multivariate_distance =
        discrete_ot_oracle(z_samples, x_samples, NormPowerCost{agg.norm_exponent_a(), p});

    std::vector<double> gx(big_n), gz(big_n);
    for (std::size_t i = 0; i < big_n; ++i) {
        gx[i] = agg.evaluate(x_samples.point(i));
        gz[i] = agg.evaluate(z_samples.point(i));
    }
    const QuantileGrid fx = quantile_from_samples(gx, big_n);
    const QuantileGrid fz = quantile_from_samples(gz, big_n);
    v.univariate_distance = wasserstein_1d(fz, fx, p);

    v.within_ball = v.multivariate_distance <= epsilon * (1.0 + 1e-12);
    const double image_radius = agg.lipschitz_k() * epsilon;
    v.implication_holds =
        !v.within_ball || v.univariate_distance <= image_radius + 1e-9 * (1.0 + image_radius);

    v.support_ok = true;
    if (support.has_value()) {
        const std::size_t m = agg.nonlinear_dimension();
        for (std::size_t i = 0; i < big_n && v.support_ok; ++i) {
            std::span<const double> pt(z_samples.point(i));
            v.support_ok = support->contains(pt.subspan(0, m));
        }
    }
    return v;
}

} // namespace drb
