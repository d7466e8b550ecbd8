#include "drb/isotonic.hpp"

#include "drb/errors.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace drb {

namespace {

void check_finite(std::span<const double> input) {
    if (input.empty()) throw invalid_parameter("isotonic: empty input");
    for (double x : input) {
        if (!std::isfinite(x)) throw invalid_parameter("isotonic: non-finite input");
    }
}

} // namespace

IsotonicResult isotonic_projection(std::span<const double> input) {
    check_finite(input);
    const std::size_t m = input.size();

    // Stack-based PAVA. Pools only on strict violation, so an already
    // monotone array passes through unchanged.
    struct Pool {
        std::size_t start;
        std::size_t count;
        double sum;
        double mean() const { return sum / static_cast<double>(count); }
    };
    std::vector<Pool> stack;
    stack.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Pool p{i, 1, input[i]};
        while (!stack.empty() && p.mean() < stack.back().mean()) {
            const Pool& top = stack.back();
            p.start = top.start;
            p.count += top.count;
            p.sum += top.sum;
            stack.pop_back();
        }
        stack.push_back(p);
    }

    IsotonicResult result;
    result.values.resize(m);
    for (const Pool& p : stack) {
        const double theta = p.mean();
        for (std::size_t i = p.start; i < p.start + p.count; ++i) result.values[i] = theta;
        // Merge with the previous block when the means tie, keeping thetas
        // strictly increasing in the decomposition.
        if (!result.blocks.empty() && theta <= result.blocks.back().theta) {
            result.blocks.back().end = p.start + p.count - 1;
        } else {
            result.blocks.push_back({p.start, p.start + p.count - 1, theta});
        }
    }
    return result;
}

std::vector<double> isotonic_maxmin_oracle(std::span<const double> input) {
    check_finite(input);
    const std::size_t m = input.size();

    std::vector<double> prefix(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + input[i];
    auto avg = [&](std::size_t j, std::size_t k) {
        return (prefix[k + 1] - prefix[j]) / static_cast<double>(k - j + 1);
    };

    std::vector<double> out(m, -std::numeric_limits<double>::infinity());
    // For each left endpoint j, sweep i from the right maintaining
    // f_j(i) = min_{k>=i} avg(j..k), then fold the max over j <= i.
    for (std::size_t j = 0; j < m; ++j) {
        double running_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = m; i-- > j;) {
            running_min = std::min(running_min, avg(j, i));
            out[i] = std::max(out[i], running_min);
        }
    }
    return out;
}

std::vector<double> isotonic_partition_oracle(std::span<const double> input) {
    check_finite(input);
    const std::size_t m = input.size();
    if (m > 14) {
        throw capacity_error("isotonic_partition_oracle: input longer than 14");
    }

    std::vector<double> prefix(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + input[i];

    std::vector<double> best;
    double best_sse = std::numeric_limits<double>::infinity();
    const std::uint64_t masks = m >= 1 ? (1ull << (m - 1)) : 1ull;
    std::vector<double> candidate(m);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        // Bit i set means a block boundary between positions i and i+1.
        std::size_t start = 0;
        double prev_mean = -std::numeric_limits<double>::infinity();
        bool feasible = true;
        double sse = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const bool boundary = (i + 1 == m) || ((mask >> i) & 1ull);
            if (!boundary) continue;
            const double mean = (prefix[i + 1] - prefix[start]) / static_cast<double>(i - start + 1);
            if (mean < prev_mean) {
                feasible = false;
                break;
            }
            for (std::size_t k = start; k <= i; ++k) {
                candidate[k] = mean;
                const double d = mean - input[k];
                sse += d * d;
            }
            prev_mean = mean;
            start = i + 1;
        }
        if (feasible && sse < best_sse) {
            best_sse = sse;
            best = candidate;
        }
    }
    return best;
}

} // namespace drb
