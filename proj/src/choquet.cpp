#include "drb/choquet.hpp"

namespace drb {

double choquet_integral(const QuantileGrid& q, const DistortionWeight& gamma) {
    const std::size_t m = q.resolution();
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        acc += gamma.value_at(q.midpoint(j)) * q[j];
    }
    return acc / static_cast<double>(m);
}

} // namespace drb
