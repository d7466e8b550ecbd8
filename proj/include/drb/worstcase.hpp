#pragma once

#include "drb/bregman.hpp"
#include "drb/distortion.hpp"
#include "drb/quantile_grid.hpp"

#include <cstdint>
#include <vector>

namespace drb {

/// Which structural assumption on gamma the solver relied on.
enum class WorstCaseKind { GammaNonDecreasing, GammaNonNegative };

struct SolveReport {
    double lambda_star;
    QuantileGrid worst_curve;
    double worst_risk;
    double constraint_residual; // |B_phi(worst_curve, reference) - epsilon|
    WorstCaseKind case_kind;
};

/// Candidate worst-case quantile curve at a fixed multiplier: map the
/// reference through phi', add gamma/lambda, project onto the non-decreasing
/// cone, and map back through the inverse of phi'. When gamma is
/// non-decreasing the projection must be the identity; this is checked.
QuantileGrid candidate_quantile(const QuantileGrid& f, const DistortionWeight& gamma,
                                const BregmanGenerator& phi, double lambda);

/// The same curve without the isotonic projection step (plot diagnostic); may
/// be non-monotone, hence a raw vector.
std::vector<double> pre_projection_curve(const QuantileGrid& f, const DistortionWeight& gamma,
                                         const BregmanGenerator& phi, double lambda);

/// Find the smallest multiplier putting the candidate curve on the divergence
/// budget, and report the attained worst-case risk. Quadratic generators with
/// non-decreasing gamma take an exact closed-form path.
SolveReport solve_lambda(const QuantileGrid& f, const DistortionWeight& gamma,
                         const BregmanGenerator& phi, double epsilon);

/// Independent best-effort maximizer of the same objective by multi-start
/// projected gradient ascent over monotone curves in the divergence ball.
/// Intended for small grids (M <= 50) as a cross-check of solve_lambda.
double worstcase_brute_oracle(const QuantileGrid& f, const DistortionWeight& gamma,
                              const BregmanGenerator& phi, double epsilon,
                              std::uint64_t seed = 1844);

} // namespace drb
