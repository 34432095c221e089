#include "orientrds/filters.hpp"

#include <cmath>
#include <numeric>

namespace orientrds {

namespace {

// Convolves n samples spaced `stride` apart, starting at data, with a
// symmetric kernel. Out-of-range taps reflect (or wrap when periodic).
void convolve_line(double* data, int n, std::ptrdiff_t stride, const std::vector<double>& taps,
                   bool periodic, std::vector<double>& scratch) {
    const int r = static_cast<int>(taps.size() / 2);
    scratch.resize(static_cast<std::size_t>(n) + 2 * r);
    for (int i = -r; i < n + r; ++i) {
        const int src = periodic ? wrap_orientation(i, n) : reflect_spatial(i, n);
        scratch[static_cast<std::size_t>(i + r)] = data[src * stride];
    }
    for (int i = 0; i < n; ++i) {
        const double* s = scratch.data() + i;
        double acc = 0.0;
        for (std::size_t t = 0; t < taps.size(); ++t) acc += taps[t] * s[t];
        data[i * stride] = acc;
    }
}

void blur_plane(double* plane, int w, int h, const std::vector<double>& taps,
                std::vector<double>& scratch) {
    for (int y = 0; y < h; ++y) {
        convolve_line(plane + static_cast<std::ptrdiff_t>(y) * w, w, 1, taps, false, scratch);
    }
    for (int x = 0; x < w; ++x) convolve_line(plane + x, h, w, taps, false, scratch);
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("Gaussian scale must be finite and non-negative");
    }
    if (sigma == 0.0) return {1.0};
    const int r = static_cast<int>(std::ceil(4.0 * sigma));
    std::vector<double> taps(static_cast<std::size_t>(2 * r + 1));
    for (int i = -r; i <= r; ++i) {
        taps[static_cast<std::size_t>(i + r)] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    }
    const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
    for (double& t : taps) t /= total;
    return taps;
}

Image gaussian_blur(const Image& f, double sigma) {
    Image out = f;
    const auto taps = gaussian_kernel(sigma);
    if (taps.size() == 1) return out;
    std::vector<double> scratch;
    blur_plane(out.values().data(), f.width(), f.height(), taps, scratch);
    return out;
}

void gaussian_blur_slices(Volume& v, double sigma) {
    const auto taps = gaussian_kernel(sigma);
    if (taps.size() == 1) return;
    const int K = v.orientations();
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (int k = 0; k < K; ++k) {
            blur_plane(v.values().data() + v.slice_size() * k, v.width(), v.height(), taps,
                       scratch);
        }
    }
}

void gaussian_blur_orientations(Volume& v, double sigma_steps) {
    const auto taps = gaussian_kernel(sigma_steps);
    if (taps.size() == 1) return;
    const auto plane = static_cast<std::ptrdiff_t>(v.slice_size());
    const int n = static_cast<int>(plane);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i) {
            convolve_line(v.values().data() + i, v.orientations(), plane, taps, true, scratch);
        }
    }
}

}  // namespace orientrds
