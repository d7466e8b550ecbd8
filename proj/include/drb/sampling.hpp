#pragma once

#include "drb/aggregation.hpp"
#include "drb/divergence.hpp"
#include "drb/witness.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace drb {

enum class MarginalKind { Normal, Weibull, LogNormal };

/// A univariate marginal with exact quantile/cdf evaluation.
class MarginalSpec {
public:
    static MarginalSpec normal(double mu, double sigma);
    static MarginalSpec weibull(double lambda, double k);
    static MarginalSpec log_normal(double mu, double sigma);

    MarginalKind kind() const { return kind_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }

    double quantile(double u) const;
    double cdf(double x) const;

private:
    MarginalSpec(MarginalKind kind, double p1, double p2);
    MarginalKind kind_;
    double p1_;
    double p2_;
};

enum class CopulaKind { Independent, StudentT };

/// Dependence structure: independence or an equicorrelated t copula.
struct CopulaSpec {
    CopulaKind kind = CopulaKind::Independent;
    double df = 0.0;
    double rho = 0.0;

    static CopulaSpec independent();
    static CopulaSpec student_t(double df, double rho);
};

struct ReferenceModel {
    std::vector<MarginalSpec> marginals;
    CopulaSpec copula;

    std::size_t dimension() const { return marginals.size(); }
};

/// Seed-deterministic Monte Carlo draw from the model: correlated Gaussian
/// vector over a chi-square mixing variable, mapped through the t cdf to
/// uniforms and then through the marginal quantile functions.
DiscreteCloud sample_reference(const ReferenceModel& model, std::size_t count,
                               std::uint64_t seed);

/// The four-asset portfolio position used throughout the examples, with
/// coordinates ordered nonlinear-first: (call underlier, put underlier,
/// first linear asset, second linear asset). g = -2 max(y1-5,0)
/// - 3 max(35-y2,0) - y3 - 4 y4; K = sqrt(30), L = sqrt(13), beta = (-1,-4).
AggregationSpec portfolio_aggregation();

/// Reference marginals matching portfolio_aggregation's coordinate order,
/// under the t copula (3 degrees of freedom, equicorrelation 0.7).
ReferenceModel portfolio_reference_model();

/// Best-effort lower estimate of the Lipschitz constant of the aggregation
/// restricted to the box: max difference quotient over sampled pairs plus
/// central finite-difference gradient norms (dual b-norm). The box spans all
/// n coordinates.
double estimate_lipschitz(const AggregationSpec& agg, const SupportBox& box,
                          std::size_t samples, std::uint64_t seed);

/// Kendall rank correlation via inversion counting, O(N log N); assumes
/// continuous data (no tie handling).
double kendall_tau(std::span<const double> x, std::span<const double> y);

} // namespace drb
