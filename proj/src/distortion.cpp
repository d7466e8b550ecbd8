#include "drb/distortion.hpp"

#include "drb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace drb {

namespace {
constexpr double kPartitionTol = 1e-12;
}

DistortionWeight::DistortionWeight(std::vector<GammaSegment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw invalid_parameter("DistortionWeight: no segments");
    }
    std::sort(segments_.begin(), segments_.end(),
              [](const GammaSegment& a, const GammaSegment& b) { return a.lo < b.lo; });

    double cursor = 0.0;
    bool any_nonzero = false;
    double prev_value = segments_.front().value;
    for (const auto& s : segments_) {
        if (!(s.lo < s.hi)) {
            throw invalid_parameter("DistortionWeight: segment with lo >= hi");
        }
        if (!std::isfinite(s.value)) {
            throw invalid_parameter("DistortionWeight: non-finite segment value");
        }
        if (std::abs(s.lo - cursor) > kPartitionTol) {
            throw invalid_parameter("DistortionWeight: gap or overlap at u = " + std::to_string(s.lo));
        }
        cursor = s.hi;
        const double len = s.hi - s.lo;
        l2_sq_ += s.value * s.value * len;
        integral_ += s.value * len;
        if (s.value != 0.0) any_nonzero = true;
        if (s.value < 0.0) is_non_negative_ = false;
        if (s.value < prev_value) is_non_decreasing_ = false;
        prev_value = s.value;
    }
    if (std::abs(cursor - 1.0) > kPartitionTol) {
        throw invalid_parameter("DistortionWeight: segments do not cover [0,1]");
    }
    if (!any_nonzero) {
        throw invalid_parameter("DistortionWeight: gamma is identically zero");
    }
    l2_norm_ = std::sqrt(l2_sq_);
}

double DistortionWeight::value_at(double u) const {
    if (u < 0.0 || u > 1.0) {
        throw invalid_parameter("DistortionWeight::value_at: u outside [0,1]");
    }
    // Upper-closed convention: piece i covers (lo_i, hi_i]; u = 0 belongs to
    // the first piece.
    if (u <= segments_.front().hi) return segments_.front().value;
    auto it = std::lower_bound(segments_.begin(), segments_.end(), u,
                               [](const GammaSegment& s, double x) { return s.hi < x; });
    if (it == segments_.end()) --it;
    return it->value;
}

DistortionWeight make_es_gamma(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw invalid_parameter("make_es_gamma: alpha must lie in (0,1)");
    }
    return DistortionWeight({{0.0, alpha, 0.0}, {alpha, 1.0, 1.0 / (1.0 - alpha)}});
}

DistortionWeight make_ier_gamma(double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0)) {
        throw invalid_parameter("make_ier_gamma: alpha must lie in (0.5,1)");
    }
    const double w = 1.0 / (1.0 - alpha);
    return DistortionWeight({{0.0, 1.0 - alpha, -w}, {1.0 - alpha, alpha, 0.0}, {alpha, 1.0, w}});
}

DistortionWeight make_piecewise_gamma(std::vector<GammaSegment> segments) {
    return DistortionWeight(std::move(segments));
}

} // namespace drb
