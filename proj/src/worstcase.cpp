#include "drb/worstcase.hpp"

#include "drb/choquet.hpp"
#include "drb/divergence.hpp"
#include "drb/errors.hpp"
#include "drb/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace drb {

namespace {

std::vector<double> raw_candidate(const QuantileGrid& f, const DistortionWeight& gamma,
                                  const BregmanGenerator& phi, double lambda) {
    if (!(lambda > 0.0)) throw invalid_parameter("candidate_quantile: lambda must be positive");
    const std::size_t m = f.resolution();
    std::vector<double> h(m);
    for (std::size_t j = 0; j < m; ++j) {
        h[j] = phi.phi_prime(f[j]) + gamma.value_at(f.midpoint(j)) / lambda;
    }
    return h;
}

double discrete_bw(std::span<const double> q, const QuantileGrid& f,
                   const BregmanGenerator& phi) {
    double acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) acc += phi.divergence(q[j], f[j]);
    return acc / static_cast<double>(q.size());
}

double discrete_objective(std::span<const double> q, const QuantileGrid& f,
                          const DistortionWeight& gamma) {
    double acc = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) acc += gamma.value_at(f.midpoint(j)) * q[j];
    return acc / static_cast<double>(q.size());
}

WorstCaseKind classify(const DistortionWeight& gamma) {
    if (gamma.is_non_decreasing()) return WorstCaseKind::GammaNonDecreasing;
    if (gamma.is_non_negative()) return WorstCaseKind::GammaNonNegative;
    throw unsupported_distortion(
        "solve_lambda: gamma must be non-decreasing or non-negative");
}

} // namespace

QuantileGrid candidate_quantile(const QuantileGrid& f, const DistortionWeight& gamma,
                                const BregmanGenerator& phi, double lambda) {
    std::vector<double> h = raw_candidate(f, gamma, phi, lambda);
    const IsotonicResult iso = isotonic_projection(h);
    if (gamma.is_non_decreasing()) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (std::abs(iso.values[j] - h[j]) > 1e-9 * (1.0 + std::abs(h[j]))) {
                throw internal_consistency_error(
                    "candidate_quantile: projection moved an already monotone curve");
            }
        }
    }
    std::vector<double> q(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) q[j] = phi.phi_prime_inverse(iso.values[j]);
    return QuantileGrid(std::move(q));
}

std::vector<double> pre_projection_curve(const QuantileGrid& f, const DistortionWeight& gamma,
                                         const BregmanGenerator& phi, double lambda) {
    std::vector<double> h = raw_candidate(f, gamma, phi, lambda);
    for (double& v : h) v = phi.phi_prime_inverse(v);
    return h;
}

SolveReport solve_lambda(const QuantileGrid& f, const DistortionWeight& gamma,
                         const BregmanGenerator& phi, double epsilon) {
    if (!(epsilon > 0.0)) throw invalid_parameter("solve_lambda: epsilon must be positive");
    const WorstCaseKind kind = classify(gamma);

    if (phi.kind() == GeneratorKind::Quadratic && gamma.is_non_decreasing()) {
        // Exact algebraic path: the candidate is f + gamma/(2c lambda) and the
        // constraint (c/(4 c^2 lambda^2)) ||gamma||_2^2 = eps pins lambda.
        const double c = phi.quadratic_scale();
        const double norm = gamma.l2_norm();
        const double lambda_star = norm / (2.0 * std::sqrt(c * epsilon));
        const double scale = std::sqrt(epsilon / c) / norm;
        std::vector<double> q(f.resolution());
        for (std::size_t j = 0; j < q.size(); ++j) {
            q[j] = f[j] + scale * gamma.value_at(f.midpoint(j));
        }
        QuantileGrid curve(std::move(q));
        const double risk = choquet_integral(f, gamma) + std::sqrt(epsilon / c) * norm;
        const double residual = std::abs(discrete_bw(curve.values(), f, phi) - epsilon);
        return SolveReport{lambda_star, std::move(curve), risk, residual, kind};
    }

    auto residual_at = [&](double lambda) {
        QuantileGrid q = candidate_quantile(f, gamma, phi, lambda);
        return discrete_bw(q.values(), f, phi) - epsilon;
    };

    // Bracket by geometric expansion from lambda = 1: r is positive for small
    // lambda and tends to -epsilon as lambda grows.
    double lo = 1.0, hi = 1.0;
    double r_lo = residual_at(lo);
    if (r_lo < 0.0) {
        while (r_lo < 0.0) {
            lo /= 10.0;
            if (lo < 1e-8) throw no_solution_error("solve_lambda: no bracket below 1e-8");
            r_lo = residual_at(lo);
        }
        hi = lo * 10.0;
    } else {
        double r_hi = residual_at(hi);
        while (r_hi > 0.0) {
            hi *= 10.0;
            if (hi > 1e8) throw no_solution_error("solve_lambda: no bracket above 1e8");
            r_hi = residual_at(hi);
        }
        lo = hi / 10.0;
        r_lo = residual_at(lo);
        if (r_lo < 0.0) {
            // the bracket slipped; rescan downward
            while (r_lo < 0.0) {
                hi = lo;
                lo /= 10.0;
                if (lo < 1e-8) throw no_solution_error("solve_lambda: no bracket below 1e-8");
                r_lo = residual_at(lo);
            }
        }
    }

    // Scan a fine geometric ladder upward from the lower bracket so the root
    // we bisect to is the smallest sign change at this resolution.
    const double ratio = std::pow(10.0, 0.1);
    double a = lo, b = hi;
    for (double t = lo * ratio; t < hi * (1.0 + 1e-12); t *= ratio) {
        const double r_t = residual_at(std::min(t, hi));
        if (r_t <= 0.0) {
            b = std::min(t, hi);
            break;
        }
        a = std::min(t, hi);
    }

    double r_mid = 0.0;
    double mid = 0.5 * (a + b);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (a + b);
        r_mid = residual_at(mid);
        if (std::abs(r_mid) <= 1e-10 * (1.0 + epsilon)) break;
        if (r_mid > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
        if ((b - a) <= 1e-10 * mid) {
            mid = 0.5 * (a + b);
            r_mid = residual_at(mid);
            break;
        }
    }

    QuantileGrid curve = candidate_quantile(f, gamma, phi, mid);
    const double risk = choquet_integral(curve, gamma);
    return SolveReport{mid, std::move(curve), risk, std::abs(r_mid), kind};
}

namespace {

/// Pull q toward f along the segment until it sits inside the divergence ball.
/// Convex combinations of two monotone curves stay monotone, so the result is
/// feasible.
void pull_into_ball(std::vector<double>& q, const QuantileGrid& f,
                    const BregmanGenerator& phi, double epsilon) {
    if (discrete_bw(q, f, phi) <= epsilon) return;
    const std::size_t m = q.size();
    if (phi.kind() == GeneratorKind::Quadratic) {
        // divergence scales as t^2 along the segment
        double d2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double d = q[j] - f[j];
            d2 += d * d;
        }
        const double bw = phi.quadratic_scale() * d2 / static_cast<double>(m);
        const double t = std::sqrt(epsilon / bw);
        for (std::size_t j = 0; j < m; ++j) q[j] = f[j] + t * (q[j] - f[j]);
        return;
    }
    double t_lo = 0.0, t_hi = 1.0;
    std::vector<double> trial(m);
    for (int iter = 0; iter < 40; ++iter) {
        const double t = 0.5 * (t_lo + t_hi);
        for (std::size_t j = 0; j < m; ++j) trial[j] = f[j] + t * (q[j] - f[j]);
        if (discrete_bw(trial, f, phi) > epsilon) {
            t_hi = t;
        } else {
            t_lo = t;
        }
    }
    for (std::size_t j = 0; j < m; ++j) q[j] = f[j] + t_lo * (q[j] - f[j]);
}

} // namespace

double worstcase_brute_oracle(const QuantileGrid& f, const DistortionWeight& gamma,
                              const BregmanGenerator& phi, double epsilon,
                              std::uint64_t seed) {
    const std::size_t m = f.resolution();
    if (m > 50) throw capacity_error("worstcase_brute_oracle: grid larger than 50");
    if (!gamma.is_non_negative()) {
        throw invalid_parameter("worstcase_brute_oracle: gamma must be non-negative");
    }
    if (!(epsilon >= 0.0)) throw invalid_parameter("worstcase_brute_oracle: negative epsilon");
    if (epsilon == 0.0) return choquet_integral(f, gamma);

    std::vector<double> grad(m);
    double grad_max = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        grad[j] = gamma.value_at(f.midpoint(j));
        grad_max = std::max(grad_max, grad[j]);
    }

    // Characteristic feasible displacement: the uniform shift exhausting the
    // budget, found by bisection. Calibrates step sizes for any generator.
    double d_char = 1.0;
    {
        std::vector<double> shifted(f.values().begin(), f.values().end());
        auto bw_of_shift = [&](double d) {
            for (std::size_t j = 0; j < m; ++j) shifted[j] = f[j] + d;
            return discrete_bw(shifted, f, phi);
        };
        double hi = 1.0;
        while (bw_of_shift(hi) < epsilon && hi < 1e8) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (bw_of_shift(mid) < epsilon ? lo : hi) = mid;
        }
        d_char = 0.5 * (lo + hi);
    }

    // One Newton-style move back toward the budget surface along the
    // constraint gradient; unlike a radial pull toward f this lets the
    // iterate slide tangentially along the boundary.
    std::vector<double> cgrad(m);
    auto boundary_correct = [&](std::vector<double>& q) {
        for (int round = 0; round < 25; ++round) {
            const double excess = discrete_bw(q, f, phi) - epsilon;
            if (excess <= 0.0) return true;
            double norm_sq = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                cgrad[j] = (phi.phi_prime(q[j]) - phi.phi_prime(f[j])) /
                           static_cast<double>(m);
                norm_sq += cgrad[j] * cgrad[j];
            }
            if (norm_sq <= 0.0) return false;
            const double scale = excess / norm_sq;
            for (std::size_t j = 0; j < m; ++j) q[j] -= scale * cgrad[j];
            q = isotonic_projection(q).values;
        }
        return discrete_bw(q, f, phi) <= epsilon;
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    double best = choquet_integral(f, gamma);
    constexpr int kStarts = 20;
    constexpr int kIters = 5000;
    std::vector<double> q(m);
    for (int start = 0; start < kStarts; ++start) {
        if (start == 0) {
            std::copy(f.values().begin(), f.values().end(), q.begin());
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                q[j] = f[j] + d_char * noise(rng);
            }
            q = isotonic_projection(q).values;
            if (!boundary_correct(q)) pull_into_ball(q, f, phi, epsilon);
        }
        for (int iter = 1; iter <= kIters; ++iter) {
            const double step =
                d_char / grad_max * 0.5 / std::sqrt(static_cast<double>(iter));
            for (std::size_t j = 0; j < m; ++j) q[j] += step * grad[j];
            q = isotonic_projection(q).values;
            if (!boundary_correct(q)) pull_into_ball(q, f, phi, epsilon);
            if (iter % 100 == 0) {
                best = std::max(best, discrete_objective(q, f, gamma));
            }
        }
        pull_into_ball(q, f, phi, epsilon);
        best = std::max(best, discrete_objective(q, f, gamma));
    }
    return best;
}

} // namespace drb
