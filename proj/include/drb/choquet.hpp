#pragma once

#include "drb/distortion.hpp"
#include "drb/quantile_grid.hpp"

namespace drb {

/// Signed Choquet integral of the discretized law: the midpoint-rule value
/// (1/M) * sum_j gamma(u_j) * q[j], with gamma evaluated exactly from its
/// segments. Deterministic and linear in q.
double choquet_integral(const QuantileGrid& q, const DistortionWeight& gamma);

} // namespace drb
