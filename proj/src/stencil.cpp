#include "orientrds/stencil.hpp"

#include <algorithm>
#include <cmath>

namespace orientrds::stencil {

PaddedVolume::PaddedVolume(const Volume& v, int spatial_halo, int angular_halo)
    : hs_(spatial_halo),
      hk_(angular_halo),
      pw_(v.width() + 2 * spatial_halo),
      ph_(v.height() + 2 * spatial_halo),
      plane_(pw_ * ph_) {
    const int W = v.width();
    const int H = v.height();
    const int K = v.orientations();
    const std::ptrdiff_t pk = K + 2 * hk_;
    data_.resize(static_cast<std::size_t>(plane_ * pk));
    std::vector<int> xs(static_cast<std::size_t>(pw_));
    std::vector<int> ys(static_cast<std::size_t>(ph_));
    for (std::ptrdiff_t i = 0; i < pw_; ++i) xs[i] = reflect_spatial(static_cast<int>(i) - hs_, W);
    for (std::ptrdiff_t j = 0; j < ph_; ++j) ys[j] = reflect_spatial(static_cast<int>(j) - hs_, H);
    for (std::ptrdiff_t kk = 0; kk < pk; ++kk) {
        const int src_k = wrap_orientation(static_cast<int>(kk) - hk_, K);
        double* dst = data_.data() + kk * plane_;
        for (std::ptrdiff_t j = 0; j < ph_; ++j) {
            const std::size_t row = v.index(0, ys[j], src_k);
            for (std::ptrdiff_t i = 0; i < pw_; ++i) dst[j * pw_ + i] = v[row + xs[i]];
        }
    }
}

PlanarTap make_planar_tap(double dx, double dy, std::ptrdiff_t row_stride) noexcept {
    // cos(pi/2) and friends land a hair off the grid; snap them back.
    auto snap = [](double d) { return std::abs(d - std::round(d)) < 1e-12 ? std::round(d) : d; };
    dx = snap(dx);
    dy = snap(dy);
    const double fx = std::floor(dx);
    const double fy = std::floor(dy);
    const double ax = dx - fx;
    const double ay = dy - fy;
    PlanarTap t;
    t.offset = static_cast<std::ptrdiff_t>(fy) * row_stride + static_cast<std::ptrdiff_t>(fx);
    t.w00 = (1.0 - ax) * (1.0 - ay);
    t.w10 = ax * (1.0 - ay);
    t.w01 = (1.0 - ax) * ay;
    t.w11 = ax * ay;
    return t;
}

std::array<int, 2> required_halo(const FrameField& frame, const Volume& v) {
    if (frame.is_invariant()) return {2, 1};
    const auto h = steps(v);
    double max_s = 1.0;
    double max_k = 1.0;
    for (const auto& tri : frame.triples()) {
        for (int i = 0; i < 3; ++i) {
            max_s = std::max({max_s, std::abs(h[i] * tri[i][0] / kPixelStep),
                              std::abs(h[i] * tri[i][1] / kPixelStep)});
            max_k = std::max(max_k, std::abs(h[i] * tri[i][2] / v.dtheta()));
        }
    }
    return {static_cast<int>(std::ceil(max_s)) + 1, static_cast<int>(std::ceil(max_k)) + 1};
}

}  // namespace orientrds::stencil
