#pragma once

#include <cstddef>
#include <vector>

namespace drb {

/// One constant piece of a distortion weight function. The piece covers
/// (lo, hi]; the first piece additionally covers its left endpoint, so a
/// partition of [0,1] evaluates everywhere.
struct GammaSegment {
    double lo;
    double hi;
    double value;
};

/// Piecewise-constant distortion weight gamma on [0,1] with exactly computed
/// L2 norm and monotonicity/sign flags. The weight is the (reflected) left
/// derivative of the distortion function h, so its integral recovers h(1).
class DistortionWeight {
public:
    /// Segments must partition [0,1] without gaps or overlaps and gamma must
    /// not be identically zero. Flags are computed, never caller-asserted.
    explicit DistortionWeight(std::vector<GammaSegment> segments);

    double value_at(double u) const;

    bool is_non_decreasing() const { return is_non_decreasing_; }
    bool is_non_negative() const { return is_non_negative_; }

    /// sqrt of the analytically computed integral of gamma^2.
    double l2_norm() const { return l2_norm_; }
    double l2_norm_squared() const { return l2_sq_; }

    /// Exact integral of gamma over [0,1] (equals h(1) - h(0)).
    double integral() const { return integral_; }

    const std::vector<GammaSegment>& segments() const { return segments_; }

private:
    std::vector<GammaSegment> segments_;
    double l2_sq_ = 0.0;
    double l2_norm_ = 0.0;
    double integral_ = 0.0;
    bool is_non_decreasing_ = true;
    bool is_non_negative_ = true;
};

/// Expected Shortfall weight at level alpha in (0,1): 1/(1-alpha) above alpha,
/// zero below.
DistortionWeight make_es_gamma(double alpha);

/// Inter-Expected-Shortfall-Range weight at level alpha in (0.5,1):
/// -1/(1-alpha) on [0,1-alpha], zero in the middle, 1/(1-alpha) on (alpha,1].
DistortionWeight make_ier_gamma(double alpha);

/// General piecewise-constant weight from caller-supplied segments.
DistortionWeight make_piecewise_gamma(std::vector<GammaSegment> segments);

} // namespace drb
