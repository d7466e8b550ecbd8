#pragma once

#include <functional>
#include <string>

namespace drb {

enum class GeneratorKind { Quadratic, Quartic, Custom };

/// A strictly convex differentiable univariate generator triple
/// (phi, phi', (phi')^{-1}). Construction spot-checks strict monotonicity of
/// phi' and the inverse identity on a probe grid.
class BregmanGenerator {
public:
    using Fn = std::function<double(double)>;

    /// phi(x) = scale * x^2.
    static BregmanGenerator quadratic(double scale);
    /// phi(x) = x^4.
    static BregmanGenerator quartic();
    /// Caller-supplied triple, validated on [probe_lo, probe_hi].
    static BregmanGenerator custom(Fn phi, Fn phi_prime, Fn phi_prime_inverse,
                                   double probe_lo = -5.0, double probe_hi = 5.0);

    double phi(double x) const { return phi_(x); }
    double phi_prime(double x) const { return phi_prime_(x); }
    double phi_prime_inverse(double y) const { return phi_prime_inverse_(y); }

    GeneratorKind kind() const { return kind_; }
    /// Scale c of a Quadratic(c) generator; meaningless for other kinds.
    double quadratic_scale() const { return quadratic_scale_; }

    /// Pointwise Bregman divergence B_phi(z1, z2) = phi(z1) - phi(z2) - phi'(z2)(z1 - z2).
    double divergence(double z1, double z2) const {
        return phi_(z1) - phi_(z2) - phi_prime_(z2) * (z1 - z2);
    }

private:
    BregmanGenerator(Fn phi, Fn phi_prime, Fn phi_prime_inverse, GeneratorKind kind,
                     double quadratic_scale, double probe_lo, double probe_hi);

    Fn phi_;
    Fn phi_prime_;
    Fn phi_prime_inverse_;
    GeneratorKind kind_;
    double quadratic_scale_ = 0.0;
};

std::string to_string(GeneratorKind kind);

} // namespace drb
