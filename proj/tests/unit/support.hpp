#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "orientrds/core.hpp"

namespace testing_support {

using orientrds::Image;
using orientrds::Volume;

inline Volume sample_volume(int w, int h, int k,
                            const std::function<double(double, double, double)>& fn) {
    Volume v(w, h, k);
    for (int kk = 0; kk < k; ++kk)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) v(x, y, kk) = fn(x, y, v.theta(kk));
    return v;
}

inline Image sample_image(int w, int h, const std::function<double(double, double)>& fn) {
    Image f(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) f(x, y) = fn(x, y);
    return f;
}

inline Volume random_volume(int w, int h, int k, std::uint64_t seed, double lo = 0.0,
                            double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Volume v(w, h, k);
    for (double& x : v.values()) x = dist(rng);
    return v;
}

inline Image random_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Image f(w, h);
    for (double& x : f.values()) x = dist(rng);
    return f;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testing_support
