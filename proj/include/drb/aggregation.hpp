#pragma once

#include <functional>
#include <span>
#include <vector>

namespace drb {

/// Holder norm exponent pair: 1/a + 1/b = 1, with b = infinity when a = 1.
double conjugate_exponent(double a);

/// L^b norm of a vector, with b = infinity handled as the max norm.
double vector_norm(std::span<const double> v, double b);

/// The decomposition g(x) = nonlinear(x^(1)) + beta^T x^(2): an n-dimensional
/// aggregation map split into a Lipschitz nonlinear block on the first m
/// coordinates and a linear tail. K is the global Lipschitz constant wrt the
/// a-norm (caller-supplied, or K_C for box-supported inputs); L is the
/// Lipschitz constant of the nonlinear part.
class AggregationSpec {
public:
    using NonlinearFn = std::function<double(std::span<const double>)>;

    AggregationSpec(std::size_t n, std::size_t m, NonlinearFn nonlinear,
                    std::vector<double> beta, double a, double lipschitz_k,
                    double nonlinear_lipschitz_l);

    /// Fully linear spec (m = 0): g(x) = beta^T x, K = ||beta||_b.
    static AggregationSpec linear(std::vector<double> beta, double a = 2.0);

    double evaluate(std::span<const double> x) const;

    std::size_t dimension() const { return n_; }
    std::size_t nonlinear_dimension() const { return m_; }
    const std::vector<double>& beta() const { return beta_; }
    double norm_exponent_a() const { return a_; }
    double norm_exponent_b() const { return b_; }
    double lipschitz_k() const { return k_; }
    double nonlinear_lipschitz_l() const { return l_; }
    /// ||beta||_b for the spec's conjugate exponent.
    double beta_norm() const { return beta_norm_; }

private:
    std::size_t n_;
    std::size_t m_;
    NonlinearFn nonlinear_;
    std::vector<double> beta_;
    double a_;
    double b_;
    double k_;
    double l_;
    double beta_norm_;
};

} // namespace drb
