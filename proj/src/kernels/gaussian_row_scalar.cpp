#include "nefcone/kernels/gaussian_row.hpp"

#include <cmath>
#include <numbers>

namespace nefcone::kernels {

RowSum gaussian_row_scalar(const RowCoefficients& k, std::int64_t j_start, std::size_t count) {
    RowSum s;
    const double d1 = k.d1 - std::nearbyint(k.d1);
    const double d2 = k.d2 - std::nearbyint(k.d2);
    for (std::size_t i = 0; i < count; ++i) {
        const double j = static_cast<double>(j_start + static_cast<std::int64_t>(i));
        const double mag = std::exp(k.c0 + j * (k.c1 + j * k.c2));
        double t = k.d0 + j * (d1 + j * d2);
        t -= std::nearbyint(t);
        const double angle = 2.0 * std::numbers::pi * t;
        s.re += mag * std::cos(angle);
        s.im += mag * std::sin(angle);
        s.abs_sum += mag;
    }
    return s;
}

} // namespace nefcone::kernels
