#pragma once

#include "drb/aggregation.hpp"
#include "drb/bregman.hpp"
#include "drb/distortion.hpp"
#include "drb/quantile_grid.hpp"
#include "drb/worstcase.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drb {

/// Diagonal positive definite quadratic-form cost specification.
struct MahalanobisSpec {
    explicit MahalanobisSpec(std::vector<double> q_diag);

    const std::vector<double>& q_diag() const { return q_diag_; }
    double q_min() const { return q_min_; }
    double q_max() const { return q_max_; }

private:
    std::vector<double> q_diag_;
    double q_min_;
    double q_max_;
};

enum class BoundMethod { WassersteinLipschitz, SeparableBregman, Mahalanobis, ComposableUpper };

/// A lower/upper bound pair on the worst-case risk, with the multipliers and
/// shifted curves behind each side when available. `budget_units` documents
/// whether epsilon entered as a transport radius or a divergence budget.
struct BoundReport {
    BoundMethod method;
    WorstCaseKind case_kind;
    double reference_risk;
    double lower;
    double upper;
    double lambda_lower; // multiplier of the lower-bound solve
    double lambda_upper; // multiplier of the upper-bound solve
    std::optional<QuantileGrid> lower_curve;
    std::optional<QuantileGrid> upper_curve;
    std::vector<double> pre_projection_upper; // upper candidate before the isotonic step
    std::vector<double> lambda_lower_components; // separable only
    std::vector<double> lambda_upper_components; // separable only
    std::string budget_units;
};

/// min{L + ||beta||_b, n^{1/b} max{L, ||beta||_b}} with 1/a + 1/b = 1.
double lipschitz_bound(double nonlinear_l, std::span<const double> beta, double a,
                       std::size_t n);

/// Two-sided bound for Lipschitz aggregation under a Wasserstein radius
/// (a = p = 2). Non-decreasing gamma takes the exact shifted-curve form;
/// non-negative gamma goes through the isotonic solver.
BoundReport wasserstein_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               const AggregationSpec& agg, double epsilon);

/// Same bound with the two Lipschitz-side constants supplied directly.
BoundReport wasserstein_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               double beta_norm, double lipschitz_k, double epsilon);

/// Component-wise bounds for separable Bregman costs: the upper side solves
/// each marginal at the full budget, the lower side at budget/n.
BoundReport separable_bregman_bounds(const std::vector<QuantileGrid>& marginal_quantiles,
                                     const DistortionWeight& gamma,
                                     const std::vector<BregmanGenerator>& phis,
                                     const std::vector<double>& beta, double epsilon);

/// Analytic cap on the separable upper-minus-lower gap:
/// sum beta_i L_i (1/lambda_upper_i - 1/lambda_lower_i) ||gamma||_2^2.
double separable_gap_bound(const std::vector<double>& beta,
                           const std::vector<double>& lipschitz_of_inverse,
                           const std::vector<double>& lambda_upper,
                           const std::vector<double>& lambda_lower,
                           const DistortionWeight& gamma);

/// Bounds under a diagonal Mahalanobis divergence budget: quadratic solves
/// with the extreme eigenvalues as generator scales and Lipschitz-rescaled
/// budgets. With Q = identity this coincides with wasserstein_bounds at
/// radius sqrt(epsilon).
BoundReport mahalanobis_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               const AggregationSpec& agg, const MahalanobisSpec& q,
                               double epsilon);

/// Same bound with the two Lipschitz-side constants supplied directly.
BoundReport mahalanobis_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               double beta_norm, double lipschitz_k, const MahalanobisSpec& q,
                               double epsilon);

/// Upper bound only, for composable generators: the univariate worst case of
/// the aggregated law at the given budget. The caller is responsible for phi'
/// being non-decreasing on the range of the aggregated position.
double composable_upper_bound(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                              const BregmanGenerator& phi_univariate, double epsilon);

/// Side-by-side comparison of direct vs separable bounds for linear
/// aggregation, in Wasserstein form and (optionally) Mahalanobis form.
/// The Wasserstein rows must satisfy sep_lower <= direct_lower <=
/// direct_upper <= sep_upper; a violation throws.
struct Table1Report {
    double reference_risk;
    double w_direct_lower;
    double w_direct_upper;
    double w_sep_lower;
    double w_sep_upper;
    bool has_mahalanobis = false;
    double m_direct_lower = 0.0;
    double m_direct_upper = 0.0;
    double m_sep_lower = 0.0;
    double m_sep_upper = 0.0;
};

Table1Report table1_compare(const AggregationSpec& agg, const DistortionWeight& gamma,
                            const std::vector<QuantileGrid>& marginal_quantiles,
                            const QuantileGrid& f_agg, double epsilon,
                            const std::optional<MahalanobisSpec>& q = std::nullopt);

} // namespace drb
