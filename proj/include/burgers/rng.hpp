#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace burgers {

/// Uniform double in [0, 1) from the top 53 bits of the engine output.
/// Used instead of std::uniform_real_distribution so that fixed-seed runs
/// produce identical samples across standard library implementations.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(eng);
}

struct Point3 {
    double x, y, t;
};

/// Default validation box: t is kept away from the initial slice so sample
/// points exercise genuine time variation.
struct SampleBox {
    double x_lo = -2.0, x_hi = 2.0;
    double y_lo = -2.0, y_hi = 2.0;
    double t_lo = 0.1, t_hi = 1.0;
};

inline std::vector<Point3> sample_points(const SampleBox& box, int count, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::vector<Point3> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double x = uniform(eng, box.x_lo, box.x_hi);
        const double y = uniform(eng, box.y_lo, box.y_hi);
        const double t = uniform(eng, box.t_lo, box.t_hi);
        pts.push_back({x, y, t});
    }
    return pts;
}

}  // namespace burgers
