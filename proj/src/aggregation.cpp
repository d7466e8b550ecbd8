#include "drb/aggregation.hpp"

#include "drb/errors.hpp"

#include <cmath>
#include <limits>

namespace drb {

double conjugate_exponent(double a) {
    if (!(a >= 1.0)) {
        throw invalid_parameter("conjugate_exponent: a must be >= 1");
    }
    if (a == 1.0) return std::numeric_limits<double>::infinity();
    return a / (a - 1.0);
}

double vector_norm(std::span<const double> v, double b) {
    if (std::isinf(b)) {
        double mx = 0.0;
        for (double x : v) mx = std::max(mx, std::abs(x));
        return mx;
    }
    double acc = 0.0;
    for (double x : v) acc += std::pow(std::abs(x), b);
    return std::pow(acc, 1.0 / b);
}

AggregationSpec::AggregationSpec(std::size_t n, std::size_t m, NonlinearFn nonlinear,
                                 std::vector<double> beta, double a, double lipschitz_k,
                                 double nonlinear_lipschitz_l)
    : n_(n),
      m_(m),
      nonlinear_(std::move(nonlinear)),
      beta_(std::move(beta)),
      a_(a),
      b_(conjugate_exponent(a)),
      k_(lipschitz_k),
      l_(nonlinear_lipschitz_l) {
    if (m_ > n_) throw invalid_parameter("AggregationSpec: m must not exceed n");
    if (beta_.size() != n_ - m_) {
        throw invalid_parameter("AggregationSpec: beta must have n - m entries");
    }
    if (m_ > 0 && !nonlinear_) {
        throw invalid_parameter("AggregationSpec: nonlinear part required when m > 0");
    }
    if (!(k_ >= 0.0) || !(l_ >= 0.0)) {
        throw invalid_parameter("AggregationSpec: Lipschitz constants must be non-negative");
    }
    beta_norm_ = vector_norm(beta_, b_);
    // The set-inclusion chain needs the linear coefficient norm below K.
    if (k_ < beta_norm_ * (1.0 - 1e-12)) {
        throw invalid_parameter("AggregationSpec: K must be at least ||beta||_b");
    }
}

AggregationSpec AggregationSpec::linear(std::vector<double> beta, double a) {
    const double b = conjugate_exponent(a);
    const double k = vector_norm(beta, b);
    const std::size_t n = beta.size();
    return AggregationSpec(n, 0, nullptr, std::move(beta), a, k, 0.0);
}

double AggregationSpec::evaluate(std::span<const double> x) const {
    if (x.size() != n_) {
        throw invalid_parameter("AggregationSpec::evaluate: dimension mismatch");
    }
    double out = 0.0;
    if (m_ > 0) out = nonlinear_(x.subspan(0, m_));
    for (std::size_t i = m_; i < n_; ++i) out += beta_[i - m_] * x[i];
    return out;
}

} // namespace drb
