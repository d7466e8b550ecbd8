#include "drb/bounds.hpp"

#include "drb/choquet.hpp"
#include "drb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace drb {

MahalanobisSpec::MahalanobisSpec(std::vector<double> q_diag) : q_diag_(std::move(q_diag)) {
    if (q_diag_.empty()) throw invalid_parameter("MahalanobisSpec: empty diagonal");
    for (double q : q_diag_) {
        if (!(q > 0.0) || !std::isfinite(q)) {
            throw invalid_parameter("MahalanobisSpec: diagonal entries must be positive");
        }
    }
    const auto [lo, hi] = std::minmax_element(q_diag_.begin(), q_diag_.end());
    q_min_ = *lo;
    q_max_ = *hi;
}

double lipschitz_bound(double nonlinear_l, std::span<const double> beta, double a,
                       std::size_t n) {
    if (!(nonlinear_l >= 0.0)) throw invalid_parameter("lipschitz_bound: L must be >= 0");
    const double b = conjugate_exponent(a);
    const double bn = vector_norm(beta, b);
    const double dim_factor =
        std::isinf(b) ? 1.0 : std::pow(static_cast<double>(n), 1.0 / b);
    return std::min(nonlinear_l + bn, dim_factor * std::max(nonlinear_l, bn));
}

namespace {

BoundReport degenerate_report(BoundMethod method, const QuantileGrid& f,
                              const DistortionWeight& gamma, std::string units) {
    const double risk = choquet_integral(f, gamma);
    const WorstCaseKind kind = gamma.is_non_decreasing() ? WorstCaseKind::GammaNonDecreasing
                                                         : WorstCaseKind::GammaNonNegative;
    const double inf = std::numeric_limits<double>::infinity();
    BoundReport out;
    out.method = method;
    out.case_kind = kind;
    out.reference_risk = risk;
    out.lower = risk;
    out.upper = risk;
    out.lambda_lower = inf;
    out.lambda_upper = inf;
    out.lower_curve = f;
    out.upper_curve = f;
    out.budget_units = std::move(units);
    return out;
}

/// Two quadratic solves with distinct budgets, sharing one report.
BoundReport quadratic_pair_report(BoundMethod method, const QuantileGrid& f,
                                  const DistortionWeight& gamma, double scale_lower,
                                  double scale_upper, double budget_lower,
                                  double budget_upper, std::string units) {
    const double reference = choquet_integral(f, gamma);
    if (budget_upper <= 0.0) {
        return degenerate_report(method, f, gamma, std::move(units));
    }
    SolveReport up = solve_lambda(f, gamma, BregmanGenerator::quadratic(scale_upper), budget_upper);
    BoundReport out;
    out.method = method;
    out.case_kind = up.case_kind;
    out.reference_risk = reference;
    out.upper = up.worst_risk;
    out.lambda_upper = up.lambda_star;
    out.upper_curve = std::move(up.worst_curve);
    out.pre_projection_upper = pre_projection_curve(
        f, gamma, BregmanGenerator::quadratic(scale_upper), up.lambda_star);
    out.budget_units = std::move(units);
    if (budget_lower <= 0.0) {
        out.lower = reference;
        out.lambda_lower = std::numeric_limits<double>::infinity();
        out.lower_curve = f;
    } else {
        SolveReport lo =
            solve_lambda(f, gamma, BregmanGenerator::quadratic(scale_lower), budget_lower);
        out.lower = lo.worst_risk;
        out.lambda_lower = lo.lambda_star;
        out.lower_curve = std::move(lo.worst_curve);
    }
    if (out.lower > out.upper + 1e-9 * (1.0 + std::abs(out.upper))) {
        throw internal_consistency_error("bounds: lower exceeded upper");
    }
    return out;
}

} // namespace

BoundReport wasserstein_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               double beta_norm, double lipschitz_k, double epsilon) {
    if (!(beta_norm >= 0.0) || !(lipschitz_k >= beta_norm)) {
        throw invalid_parameter("wasserstein_bounds: need 0 <= ||beta|| <= K");
    }
    if (!(epsilon >= 0.0)) throw invalid_parameter("wasserstein_bounds: negative epsilon");
    if (epsilon == 0.0) {
        return degenerate_report(BoundMethod::WassersteinLipschitz, f_agg, gamma,
                                 "wasserstein-radius");
    }
    // Budgets are squared radii scaled by the Lipschitz constants; the
    // quadratic solver's closed form then reproduces the shifted-curve
    // expressions exactly for non-decreasing gamma.
    const double bn = beta_norm;
    const double k = lipschitz_k;
    return quadratic_pair_report(BoundMethod::WassersteinLipschitz, f_agg, gamma, 1.0, 1.0,
                                 bn * epsilon * bn * epsilon, k * epsilon * k * epsilon,
                                 "wasserstein-radius");
}

BoundReport wasserstein_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               const AggregationSpec& agg, double epsilon) {
    if (agg.norm_exponent_a() != 2.0) {
        throw invalid_parameter("wasserstein_bounds: requires the a = 2 norm");
    }
    return wasserstein_bounds(f_agg, gamma, agg.beta_norm(), agg.lipschitz_k(), epsilon);
}

BoundReport separable_bregman_bounds(const std::vector<QuantileGrid>& marginal_quantiles,
                                     const DistortionWeight& gamma,
                                     const std::vector<BregmanGenerator>& phis,
                                     const std::vector<double>& beta, double epsilon) {
    const std::size_t n = marginal_quantiles.size();
    if (n == 0) throw invalid_parameter("separable_bregman_bounds: no marginals");
    if (phis.size() != n || beta.size() != n) {
        throw invalid_parameter("separable_bregman_bounds: size mismatch");
    }
    for (double b : beta) {
        if (!(b >= 0.0)) {
            throw invalid_parameter("separable_bregman_bounds: beta must be non-negative");
        }
    }
    if (!gamma.is_non_negative()) {
        throw invalid_parameter("separable_bregman_bounds: gamma must be non-negative");
    }
    if (!(epsilon > 0.0)) throw invalid_parameter("separable_bregman_bounds: epsilon must be > 0");

    BoundReport out;
    out.method = BoundMethod::SeparableBregman;
    out.case_kind = gamma.is_non_decreasing() ? WorstCaseKind::GammaNonDecreasing
                                              : WorstCaseKind::GammaNonNegative;
    out.budget_units = "bregman-budget";
    out.reference_risk = 0.0;
    out.lower = 0.0;
    out.upper = 0.0;
    out.lambda_lower = std::numeric_limits<double>::quiet_NaN();
    out.lambda_upper = std::numeric_limits<double>::quiet_NaN();
    out.lambda_lower_components.assign(n, std::numeric_limits<double>::infinity());
    out.lambda_upper_components.assign(n, std::numeric_limits<double>::infinity());
    const double lower_budget = epsilon / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.reference_risk += beta[i] * choquet_integral(marginal_quantiles[i], gamma);
        if (beta[i] == 0.0) continue;
        SolveReport up = solve_lambda(marginal_quantiles[i], gamma, phis[i], epsilon);
        SolveReport lo = solve_lambda(marginal_quantiles[i], gamma, phis[i], lower_budget);
        out.upper += beta[i] * up.worst_risk;
        out.lower += beta[i] * lo.worst_risk;
        out.lambda_upper_components[i] = up.lambda_star;
        out.lambda_lower_components[i] = lo.lambda_star;
    }
    return out;
}

double separable_gap_bound(const std::vector<double>& beta,
                           const std::vector<double>& lipschitz_of_inverse,
                           const std::vector<double>& lambda_upper,
                           const std::vector<double>& lambda_lower,
                           const DistortionWeight& gamma) {
    const std::size_t n = beta.size();
    if (lipschitz_of_inverse.size() != n || lambda_upper.size() != n ||
        lambda_lower.size() != n) {
        throw invalid_parameter("separable_gap_bound: size mismatch");
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lambda_upper[i] > 0.0) || !(lambda_lower[i] > 0.0)) {
            throw invalid_parameter("separable_gap_bound: multipliers must be positive");
        }
        if (!(lipschitz_of_inverse[i] >= 0.0)) {
            throw invalid_parameter("separable_gap_bound: L_i must be >= 0");
        }
        gap += beta[i] * lipschitz_of_inverse[i] *
               (1.0 / lambda_upper[i] - 1.0 / lambda_lower[i]);
    }
    return gap * gamma.l2_norm_squared();
}

BoundReport mahalanobis_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               double beta_norm, double lipschitz_k, const MahalanobisSpec& q,
                               double epsilon) {
    if (!(beta_norm >= 0.0) || !(lipschitz_k >= beta_norm)) {
        throw invalid_parameter("mahalanobis_bounds: need 0 <= ||beta|| <= K");
    }
    if (!(epsilon >= 0.0)) throw invalid_parameter("mahalanobis_bounds: negative epsilon");
    if (epsilon == 0.0) {
        return degenerate_report(BoundMethod::Mahalanobis, f_agg, gamma, "mahalanobis-budget");
    }
    // Image budgets carry the squared Lipschitz constants; the extreme
    // eigenvalues become the quadratic generator scales, so the closed form
    // gives upper shift K sqrt(eps/q_min) ||gamma||_2 and lower shift
    // ||beta||_2 sqrt(eps/q_max) ||gamma||_2.
    const double bn = beta_norm;
    const double k = lipschitz_k;
    return quadratic_pair_report(BoundMethod::Mahalanobis, f_agg, gamma, q.q_max(), q.q_min(),
                                 bn * bn * epsilon, k * k * epsilon, "mahalanobis-budget");
}

BoundReport mahalanobis_bounds(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                               const AggregationSpec& agg, const MahalanobisSpec& q,
                               double epsilon) {
    if (agg.norm_exponent_a() != 2.0) {
        throw invalid_parameter("mahalanobis_bounds: requires the a = 2 norm");
    }
    if (q.q_diag().size() != agg.dimension()) {
        throw invalid_parameter("mahalanobis_bounds: Q dimension mismatch");
    }
    return mahalanobis_bounds(f_agg, gamma, agg.beta_norm(), agg.lipschitz_k(), q, epsilon);
}

double composable_upper_bound(const QuantileGrid& f_agg, const DistortionWeight& gamma,
                              const BregmanGenerator& phi_univariate, double epsilon) {
    if (!(epsilon >= 0.0)) throw invalid_parameter("composable_upper_bound: negative epsilon");
    if (epsilon == 0.0) return choquet_integral(f_agg, gamma);
    return solve_lambda(f_agg, gamma, phi_univariate, epsilon).worst_risk;
}

Table1Report table1_compare(const AggregationSpec& agg, const DistortionWeight& gamma,
                            const std::vector<QuantileGrid>& marginal_quantiles,
                            const QuantileGrid& f_agg, double epsilon,
                            const std::optional<MahalanobisSpec>& q) {
    if (agg.nonlinear_dimension() != 0) {
        throw invalid_parameter("table1_compare: aggregation must be linear");
    }
    if (!gamma.is_non_decreasing() || !gamma.is_non_negative()) {
        throw invalid_parameter(
            "table1_compare: gamma must be non-decreasing and non-negative");
    }
    if (marginal_quantiles.size() != agg.dimension()) {
        throw invalid_parameter("table1_compare: one marginal grid per coordinate required");
    }
    const std::size_t n = agg.dimension();

    Table1Report out;
    out.reference_risk = choquet_integral(f_agg, gamma);

    const BoundReport direct = wasserstein_bounds(f_agg, gamma, agg, epsilon);
    out.w_direct_lower = direct.lower;
    out.w_direct_upper = direct.upper;

    std::vector<BregmanGenerator> quad(n, BregmanGenerator::quadratic(1.0));
    const BoundReport sep =
        separable_bregman_bounds(marginal_quantiles, gamma, quad, agg.beta(), epsilon * epsilon);
    out.w_sep_lower = sep.lower;
    out.w_sep_upper = sep.upper;

    // The ordering chain is asserted on the epsilon-increments over each
    // method's own reference: the direct rows sit on the aggregated risk, the
    // separable rows on the comonotone sum of marginal risks, and those two
    // references coincide only under comonotone dependence.
    const double sep_ref = sep.reference_risk;
    const double tol = 1e-9 * (1.0 + std::abs(out.reference_risk));
    const double d_lo = out.w_direct_lower - out.reference_risk;
    const double d_up = out.w_direct_upper - out.reference_risk;
    const double s_lo = out.w_sep_lower - sep_ref;
    const double s_up = out.w_sep_upper - sep_ref;
    if (!(s_lo <= d_lo + tol && d_lo <= d_up + tol && d_up <= s_up + tol)) {
        throw internal_consistency_error("table1_compare: ordering chain violated");
    }

    if (q.has_value()) {
        out.has_mahalanobis = true;
        const BoundReport md = mahalanobis_bounds(f_agg, gamma, agg, *q, epsilon * epsilon);
        out.m_direct_lower = md.lower;
        out.m_direct_upper = md.upper;
        std::vector<BregmanGenerator> scaled;
        scaled.reserve(n);
        for (double qi : q->q_diag()) scaled.push_back(BregmanGenerator::quadratic(qi));
        const BoundReport ms = separable_bregman_bounds(marginal_quantiles, gamma, scaled,
                                                        agg.beta(), epsilon * epsilon);
        out.m_sep_lower = ms.lower;
        out.m_sep_upper = ms.upper;
    }
    return out;
}

} // namespace drb
