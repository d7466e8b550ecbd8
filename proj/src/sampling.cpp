#include "drb/sampling.hpp"

#include "drb/errors.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/distributions/weibull.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace drb {

MarginalSpec::MarginalSpec(MarginalKind kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {}

MarginalSpec MarginalSpec::normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw invalid_parameter("MarginalSpec: sigma must be positive");
    return MarginalSpec(MarginalKind::Normal, mu, sigma);
}

MarginalSpec MarginalSpec::weibull(double lambda, double k) {
    if (!(lambda > 0.0) || !(k > 0.0)) {
        throw invalid_parameter("MarginalSpec: Weibull parameters must be positive");
    }
    return MarginalSpec(MarginalKind::Weibull, lambda, k);
}

MarginalSpec MarginalSpec::log_normal(double mu, double sigma) {
    if (!(sigma > 0.0)) throw invalid_parameter("MarginalSpec: sigma must be positive");
    return MarginalSpec(MarginalKind::LogNormal, mu, sigma);
}

double MarginalSpec::quantile(double u) const {
    if (!(u > 0.0) || !(u < 1.0)) throw invalid_parameter("MarginalSpec: u outside (0,1)");
    switch (kind_) {
    case MarginalKind::Normal:
        return boost::math::quantile(boost::math::normal_distribution<double>(p1_, p2_), u);
    case MarginalKind::Weibull:
        return boost::math::quantile(boost::math::weibull_distribution<double>(p2_, p1_), u);
    case MarginalKind::LogNormal:
        return boost::math::quantile(boost::math::lognormal_distribution<double>(p1_, p2_), u);
    }
    throw internal_consistency_error("MarginalSpec: unknown kind");
}

double MarginalSpec::cdf(double x) const {
    switch (kind_) {
    case MarginalKind::Normal:
        return boost::math::cdf(boost::math::normal_distribution<double>(p1_, p2_), x);
    case MarginalKind::Weibull:
        return x <= 0.0
                   ? 0.0
                   : boost::math::cdf(boost::math::weibull_distribution<double>(p2_, p1_), x);
    case MarginalKind::LogNormal:
        return x <= 0.0
                   ? 0.0
                   : boost::math::cdf(boost::math::lognormal_distribution<double>(p1_, p2_), x);
    }
    throw internal_consistency_error("MarginalSpec: unknown kind");
}

CopulaSpec CopulaSpec::independent() { return CopulaSpec{CopulaKind::Independent, 0.0, 0.0}; }

CopulaSpec CopulaSpec::student_t(double df, double rho) {
    if (!(df > 0.0)) throw invalid_parameter("CopulaSpec: df must be positive");
    if (!(rho < 1.0)) throw invalid_parameter("CopulaSpec: rho must be below 1");
    return CopulaSpec{CopulaKind::StudentT, df, rho};
}

namespace {

// Uniform in (0,1) with full 53-bit resolution, never exactly 0 or 1.
double next_uniform(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Lower Cholesky factor of the equicorrelation matrix.
std::vector<std::vector<double>> equicorrelation_cholesky(std::size_t n, double rho) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n, rho));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
    std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(s > 0.0)) {
                    throw invalid_parameter(
                        "sample_reference: equicorrelation matrix not positive definite");
                }
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

} // namespace

DiscreteCloud sample_reference(const ReferenceModel& model, std::size_t count,
                               std::uint64_t seed) {
    const std::size_t n = model.dimension();
    if (n == 0) throw invalid_parameter("sample_reference: model has no marginals");
    if (count < 1) throw invalid_parameter("sample_reference: count must be >= 1");

    std::mt19937_64 rng(seed);
    const boost::math::normal_distribution<double> std_normal(0.0, 1.0);

    std::vector<std::vector<double>> points(count, std::vector<double>(n));
    if (model.copula.kind == CopulaKind::Independent) {
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                points[i][j] = model.marginals[j].quantile(next_uniform(rng));
            }
        }
        return DiscreteCloud(std::move(points));
    }

    const double df = model.copula.df;
    const auto chol = equicorrelation_cholesky(n, model.copula.rho);
    const boost::math::chi_squared_distribution<double> chi2(df);
    const boost::math::students_t_distribution<double> t_dist(df);

    std::vector<double> w(n), z(n);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            w[j] = boost::math::quantile(std_normal, next_uniform(rng));
        }
        const double s = boost::math::quantile(chi2, next_uniform(rng));
        const double mix = std::sqrt(df / s);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k <= j; ++k) acc += chol[j][k] * w[k];
            z[j] = acc * mix;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double u = boost::math::cdf(t_dist, z[j]);
            points[i][j] = model.marginals[j].quantile(std::clamp(u, 1e-16, 1.0 - 1e-16));
        }
    }
    return DiscreteCloud(std::move(points));
}

AggregationSpec portfolio_aggregation() {
    auto nonlinear = [](std::span<const double> y) {
        return -2.0 * std::max(y[0] - 5.0, 0.0) - 3.0 * std::max(35.0 - y[1], 0.0);
    };
    return AggregationSpec(4, 2, nonlinear, {-1.0, -4.0}, 2.0, std::sqrt(30.0),
                           std::sqrt(13.0));
}

ReferenceModel portfolio_reference_model() {
    ReferenceModel model;
    model.marginals = {MarginalSpec::weibull(2.0, 0.5), MarginalSpec::log_normal(3.0, 1.0),
                       MarginalSpec::normal(4.0, 1.0), MarginalSpec::normal(35.0, 1.0)};
    model.copula = CopulaSpec::student_t(3.0, 0.7);
    return model;
}

double estimate_lipschitz(const AggregationSpec& agg, const SupportBox& box,
                          std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw invalid_parameter("estimate_lipschitz: samples must be >= 2");
    const std::size_t n = agg.dimension();
    if (box.lo.size() != n) {
        throw invalid_parameter("estimate_lipschitz: box must span all coordinates");
    }
    std::mt19937_64 rng(seed);
    auto draw_point = [&](std::vector<double>& x) {
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * next_uniform(rng);
        }
    };

    const double a = agg.norm_exponent_a();
    const double b = agg.norm_exponent_b();
    double best = 0.0;
    std::vector<double> x(n), y(n), grad(n);
    const double h = 1e-5;
    for (std::size_t s = 0; s < samples; ++s) {
        draw_point(x);
        draw_point(y);
        double dist = 0.0;
        if (std::isinf(a)) {
            for (std::size_t j = 0; j < n; ++j) dist = std::max(dist, std::abs(x[j] - y[j]));
        } else {
            for (std::size_t j = 0; j < n; ++j) dist += std::pow(std::abs(x[j] - y[j]), a);
            dist = std::pow(dist, 1.0 / a);
        }
        if (dist > 0.0) {
            best = std::max(best, std::abs(agg.evaluate(x) - agg.evaluate(y)) / dist);
        }
        // central finite-difference gradient; its dual (b-)norm bounds the
        // local difference quotients
        for (std::size_t j = 0; j < n; ++j) {
            y = x;
            y[j] = x[j] + h;
            const double up = agg.evaluate(y);
            y[j] = x[j] - h;
            const double dn = agg.evaluate(y);
            grad[j] = (up - dn) / (2.0 * h);
        }
        best = std::max(best, vector_norm(grad, b));
    }
    return best;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2) throw invalid_parameter("kendall_tau: need two equal samples");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });
    std::vector<double> ranked(n);
    for (std::size_t i = 0; i < n; ++i) ranked[i] = y[order[i]];

    // Count inversions of y ranked by x with a merge sort.
    std::vector<double> buf(n);
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (ranked[j] < ranked[i]) {
                    inversions += mid - i;
                    buf[k++] = ranked[j++];
                } else {
                    buf[k++] = ranked[i++];
                }
            }
            while (i < mid) buf[k++] = ranked[i++];
            while (j < hi) buf[k++] = ranked[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      ranked.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return 1.0 - 2.0 * static_cast<double>(inversions) / pairs;
}

} // namespace drb
