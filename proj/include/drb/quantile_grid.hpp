#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace drb {

/// A left-continuous non-decreasing quantile function discretized on the
/// uniform midpoint grid u_j = (2j-1)/(2M), j = 1..M. The universal carrier
/// for reference quantiles and worst-case curves.
class QuantileGrid {
public:
    /// Validating constructor: rejects non-monotone or non-finite values and M < 2.
    explicit QuantileGrid(std::vector<double> values);

    /// Constant grid of value c.
    static QuantileGrid constant(std::size_t resolution, double c);

    std::size_t resolution() const { return values_.size(); }
    double operator[](std::size_t j) const { return values_[j]; }
    std::span<const double> values() const { return values_; }

    /// Midpoint u_j of cell j (0-based): (2(j+1)-1)/(2M).
    double midpoint(std::size_t j) const {
        return (2.0 * static_cast<double>(j + 1) - 1.0) / (2.0 * static_cast<double>(values_.size()));
    }

    /// Grid mean, i.e. the expectation of the discretized law.
    double mean() const;

    /// Pointwise sum/shift; operands must share the resolution.
    QuantileGrid shifted(double c) const;
    QuantileGrid plus(const QuantileGrid& other) const;

private:
    std::vector<double> values_;
};

/// Left-continuous empirical quantile of a sample: values[j] is the order
/// statistic of rank ceil(u_j * N). Sorts internally (the one constructor
/// allowed to reorder its input).
QuantileGrid quantile_from_samples(std::span<const double> samples, std::size_t resolution);

} // namespace drb
