#pragma once

#include "drb/aggregation.hpp"
#include "drb/divergence.hpp"

#include <optional>
#include <vector>

namespace drb {

/// Axis-aligned box standing in for the compact support set of the nonlinear
/// coordinates.
struct SupportBox {
    std::vector<double> lo;
    std::vector<double> hi;

    SupportBox(std::vector<double> lo_in, std::vector<double> hi_in);
    bool contains(std::span<const double> x_prefix) const;
};

/// Build a perturbed cloud Z with g(Z_i) = z_target_i exactly, moving only
/// the linear coordinates along the dual direction of beta. The identity
/// coupling then costs exactly (mean |z - g(x)|^p)^{1/p} / ||beta||_b, which
/// must fit the radius. p is the transport order across samples (default 2).
DiscreteCloud construct_witness(const DiscreteCloud& x_samples, const AggregationSpec& agg,
                                const std::vector<double>& z_target, double epsilon,
                                double p = 2.0);

struct InclusionVerdict {
    double multivariate_distance; // exact OT between the clouds, a-norm, order p
    double univariate_distance;   // transport distance between aggregated laws
    bool within_ball;             // multivariate_distance <= epsilon
    bool implication_holds;       // within_ball implies univariate <= K*epsilon + tol
    bool support_ok;              // nonlinear coordinates of z inside the box
};

/// Empirical check of the image-ball inclusion: if Z is within the
/// multivariate ball, the aggregated law must be within the K-scaled
/// univariate ball.
InclusionVerdict verify_inclusion(const DiscreteCloud& x_samples, const DiscreteCloud& z_samples,
                                  const AggregationSpec& agg, double epsilon,
                                  const std::optional<SupportBox>& support = std::nullopt,
                                  double p = 2.0);

} // namespace drb
