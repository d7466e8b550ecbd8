#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace drb {

/// One pooled block of an isotonic fit: indices [start, end] (inclusive,
/// 0-based) sharing the block value theta, which equals the mean of the input
/// over the block. Thetas are strictly increasing across blocks.
struct IsotonicBlock {
    std::size_t start;
    std::size_t end;
    double theta;
};

struct IsotonicResult {
    std::vector<double> values;
    std::vector<IsotonicBlock> blocks;
};

/// L2 projection of an array onto the non-decreasing cone under uniform
/// weights, via pool-adjacent-violators. Idempotent; blocks with equal means
/// are merged so the decomposition has strictly increasing thetas.
IsotonicResult isotonic_projection(std::span<const double> input);

/// Discrete max-min characterization: out[i] = max_{j<=i} min_{k>=i}
/// mean(l[j..k]). O(M^2); intended for M <= 2000.
std::vector<double> isotonic_maxmin_oracle(std::span<const double> input);

/// Exhaustive ground truth over all 2^{M-1} consecutive-block partitions with
/// non-decreasing block means, minimizing the squared error. M <= 14.
std::vector<double> isotonic_partition_oracle(std::span<const double> input);

} // namespace drb
