#pragma once

#include "drb/bregman.hpp"
#include "drb/quantile_grid.hpp"

#include <variant>
#include <vector>

namespace drb {

/// Finite equally weighted point cloud in R^n: the discrete stand-in for a
/// multivariate reference law.
class DiscreteCloud {
public:
    explicit DiscreteCloud(std::vector<std::vector<double>> points);

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_.front().size(); }
    const std::vector<double>& point(std::size_t i) const { return points_[i]; }
    const std::vector<std::vector<double>>& points() const { return points_; }

    /// Empirical quantile grid of one coordinate, at resolution N (the sorted
    /// coordinate values themselves).
    QuantileGrid coordinate_quantiles(std::size_t coord) const;

private:
    std::vector<std::vector<double>> points_;
};

/// Comonotonic-coupling Wasserstein distance between two quantile grids:
/// ((1/M) sum |f_j - g_j|^p)^{1/p}.
double wasserstein_1d(const QuantileGrid& f, const QuantileGrid& g, double p);

/// 1-D Bregman-Wasserstein divergence from f (the perturbed law) to g (the
/// reference), via the comonotonic coupling.
double bregman_wasserstein_1d(const QuantileGrid& f, const QuantileGrid& g,
                              const BregmanGenerator& phi);

/// Ground-cost choices for the exhaustive transport oracle.
struct NormPowerCost {
    double a; // norm exponent
    double p; // power; the oracle returns the p-th root of the optimal average
};
struct SeparableBregmanCost {
    std::vector<BregmanGenerator> phis; // one generator per coordinate
};
struct MahalanobisCost {
    std::vector<double> q_diag;
};
using TransportCost = std::variant<NormPowerCost, SeparableBregmanCost, MahalanobisCost>;

/// Exact optimal transport between equal-size uniform clouds by exhaustive
/// assignment enumeration (N! permutations, capped at N = 9). NormPower
/// returns the cost^{1/p} root; the Bregman and Mahalanobis variants return
/// the raw average divergence, measured from x to y (x is the perturbed law).
double discrete_ot_oracle(const DiscreteCloud& x, const DiscreteCloud& y,
                          const TransportCost& cost);

} // namespace drb
