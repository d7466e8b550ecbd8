#include "drb/divergence.hpp"

#include "drb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace drb {

DiscreteCloud::DiscreteCloud(std::vector<std::vector<double>> points) : points_(std::move(points)) {
    if (points_.empty()) throw invalid_parameter("DiscreteCloud: no points");
    const std::size_t n = points_.front().size();
    if (n == 0) throw invalid_parameter("DiscreteCloud: zero-dimensional points");
    for (const auto& p : points_) {
        if (p.size() != n) throw invalid_parameter("DiscreteCloud: inconsistent dimensions");
        for (double x : p) {
            if (!std::isfinite(x)) throw invalid_parameter("DiscreteCloud: non-finite coordinate");
        }
    }
}

QuantileGrid DiscreteCloud::coordinate_quantiles(std::size_t coord) const {
    std::vector<double> column(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) column[i] = points_[i].at(coord);
    return quantile_from_samples(column, column.size());
}

double wasserstein_1d(const QuantileGrid& f, const QuantileGrid& g, double p) {
    if (f.resolution() != g.resolution()) {
        throw invalid_parameter("wasserstein_1d: resolution mismatch");
    }
    if (!(p >= 1.0)) throw invalid_parameter("wasserstein_1d: p must be >= 1");
    const std::size_t m = f.resolution();
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += std::pow(std::abs(f[j] - g[j]), p);
    }
    return std::pow(acc / static_cast<double>(m), 1.0 / p);
}

double bregman_wasserstein_1d(const QuantileGrid& f, const QuantileGrid& g,
                              const BregmanGenerator& phi) {
    if (f.resolution() != g.resolution()) {
        throw invalid_parameter("bregman_wasserstein_1d: resolution mismatch");
    }
    const std::size_t m = f.resolution();
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += phi.divergence(f[j], g[j]);
    }
    return acc / static_cast<double>(m);
}

namespace {

double pair_cost(const std::vector<double>& x, const std::vector<double>& y,
                 const TransportCost& cost) {
    struct Visitor {
        const std::vector<double>& x;
        const std::vector<double>& y;
        double operator()(const NormPowerCost& c) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                acc += std::pow(std::abs(x[i] - y[i]), c.a);
            }
            return std::pow(std::pow(acc, 1.0 / c.a), c.p);
        }
        double operator()(const SeparableBregmanCost& c) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                acc += c.phis[i].divergence(x[i], y[i]);
            }
            return acc;
        }
        double operator()(const MahalanobisCost& c) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                acc += c.q_diag[i] * d * d;
            }
            return acc;
        }
    };
    return std::visit(Visitor{x, y}, cost);
}

} // namespace

double discrete_ot_oracle(const DiscreteCloud& x, const DiscreteCloud& y,
                          const TransportCost& cost) {
    if (x.size() != y.size()) {
        throw invalid_parameter("discrete_ot_oracle: clouds must have equal size");
    }
    if (x.dimension() != y.dimension()) {
        throw invalid_parameter("discrete_ot_oracle: clouds must have equal dimension");
    }
    const std::size_t n = x.size();
    if (n > 9) throw capacity_error("discrete_ot_oracle: more than 9 points");

    if (const auto* np = std::get_if<NormPowerCost>(&cost)) {
        if (!(np->a >= 1.0) || !(np->p >= 1.0)) {
            throw invalid_parameter("discrete_ot_oracle: norm/power exponents must be >= 1");
        }
    }
    if (const auto* sb = std::get_if<SeparableBregmanCost>(&cost)) {
        if (sb->phis.size() != x.dimension()) {
            throw invalid_parameter("discrete_ot_oracle: one generator per coordinate required");
        }
    }
    if (const auto* mh = std::get_if<MahalanobisCost>(&cost)) {
        if (mh->q_diag.size() != x.dimension()) {
            throw invalid_parameter("discrete_ot_oracle: q_diag dimension mismatch");
        }
        for (double q : mh->q_diag) {
            if (!(q > 0.0)) {
                throw invalid_parameter("discrete_ot_oracle: q_diag must be positive");
            }
        }
    }

    // Precompute the pairwise cost matrix, then minimize over assignments.
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c[i][j] = pair_cost(x.point(i), y.point(j), cost);
        }
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += c[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double average = best / static_cast<double>(n);
    if (const auto* np = std::get_if<NormPowerCost>(&cost)) {
        return std::pow(average, 1.0 / np->p);
    }
    return average;
}

} // namespace drb
