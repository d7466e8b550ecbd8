#include "drb/quantile_grid.hpp"

#include "drb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace drb {

QuantileGrid::QuantileGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) {
        throw invalid_parameter("QuantileGrid: resolution must be at least 2");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw invalid_parameter("QuantileGrid: non-finite value at index " + std::to_string(j));
        }
        if (j > 0 && values_[j] < values_[j - 1]) {
            throw invalid_parameter("QuantileGrid: values must be non-decreasing (violation at index " +
                                    std::to_string(j) + ")");
        }
    }
}

QuantileGrid QuantileGrid::constant(std::size_t resolution, double c) {
    return QuantileGrid(std::vector<double>(resolution, c));
}

double QuantileGrid::mean() const {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

QuantileGrid QuantileGrid::shifted(double c) const {
    std::vector<double> out(values_);
    for (double& v : out) v += c;
    return QuantileGrid(std::move(out));
}

QuantileGrid QuantileGrid::plus(const QuantileGrid& other) const {
    if (other.resolution() != resolution()) {
        throw invalid_parameter("QuantileGrid::plus: resolution mismatch");
    }
    std::vector<double> out(values_);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += other.values_[j];
    return QuantileGrid(std::move(out));
}

QuantileGrid quantile_from_samples(std::span<const double> samples, std::size_t resolution) {
    if (samples.empty()) {
        throw invalid_parameter("quantile_from_samples: empty sample");
    }
    for (double x : samples) {
        if (!std::isfinite(x)) throw invalid_parameter("quantile_from_samples: non-finite sample");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const auto n = static_cast<double>(sorted.size());
    const auto m = static_cast<double>(resolution);
    std::vector<double> values(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        const double u = (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * m);
        auto rank = static_cast<std::size_t>(std::ceil(u * n)); // 1-based order statistic
        if (rank == 0) rank = 1;
        if (rank > sorted.size()) rank = sorted.size();
        values[j] = sorted[rank - 1];
    }
    return QuantileGrid(std::move(values));
}

} // namespace drb
