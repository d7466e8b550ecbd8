#include "drb/bregman.hpp"

#include "drb/errors.hpp"

#include <cmath>
#include <limits>

namespace drb {

BregmanGenerator::BregmanGenerator(Fn phi, Fn phi_prime, Fn phi_prime_inverse, GeneratorKind kind,
                                   double quadratic_scale, double probe_lo, double probe_hi)
    : phi_(std::move(phi)),
      phi_prime_(std::move(phi_prime)),
      phi_prime_inverse_(std::move(phi_prime_inverse)),
      kind_(kind),
      quadratic_scale_(quadratic_scale) {
    constexpr int kProbePoints = 21;
    constexpr double kInverseTol = 1e-10;
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kProbePoints; ++i) {
        const double x = probe_lo + (probe_hi - probe_lo) * i / (kProbePoints - 1);
        const double d = phi_prime_(x);
        if (!std::isfinite(d) || d <= prev) {
            throw invalid_parameter("BregmanGenerator: phi' is not strictly increasing on probe grid");
        }
        prev = d;
        const double back = phi_prime_inverse_(d);
        if (std::abs(back - x) > kInverseTol * (1.0 + std::abs(x))) {
            throw invalid_parameter("BregmanGenerator: (phi')^{-1} inconsistent with phi' on probe grid");
        }
    }
}

BregmanGenerator BregmanGenerator::quadratic(double scale) {
    if (!(scale > 0.0)) {
        throw invalid_parameter("BregmanGenerator::quadratic: scale must be positive");
    }
    return BregmanGenerator(
        [scale](double x) { return scale * x * x; },
        [scale](double x) { return 2.0 * scale * x; },
        [scale](double y) { return y / (2.0 * scale); },
        GeneratorKind::Quadratic, scale, -5.0, 5.0);
}

BregmanGenerator BregmanGenerator::quartic() {
    return BregmanGenerator(
        [](double x) { return x * x * x * x; },
        [](double x) { return 4.0 * x * x * x; },
        [](double y) { return std::copysign(std::cbrt(std::abs(y) / 4.0), y); },
        GeneratorKind::Quartic, 0.0, -5.0, 5.0);
}

BregmanGenerator BregmanGenerator::custom(Fn phi, Fn phi_prime, Fn phi_prime_inverse,
                                          double probe_lo, double probe_hi) {
    return BregmanGenerator(std::move(phi), std::move(phi_prime), std::move(phi_prime_inverse),
                            GeneratorKind::Custom, 0.0, probe_lo, probe_hi);
}

std::string to_string(GeneratorKind kind) {
    switch (kind) {
    case GeneratorKind::Quadratic: return "quadratic";
    case GeneratorKind::Quartic: return "quartic";
    case GeneratorKind::Custom: return "custom";
    }
    return "unknown";
}

} // namespace drb
