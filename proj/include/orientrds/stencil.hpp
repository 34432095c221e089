#pragma once

// Arm sampling shared by every frame-based finite-difference operator.
//
// For voxel p and frame vector B_i the stencil reads U(p + h_i B_i) and
// U(p - h_i B_i), with h = (dxy, dxy, dtheta). Off-grid samples are trilinear
// with reflective spatial and periodic angular boundaries. The invariant frame
// takes a bilinear fast path whose weights depend only on the slice.

#include <array>
#include <cmath>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds::stencil {

struct Arms {
    double center = 0.0;
    std::array<double, 3> plus{};
    std::array<double, 3> minus{};
};

/// Step length per frame axis: dxy for the spatial axes, dtheta for the angle.
inline std::array<double, 3> steps(const Volume& v) {
    return {kPixelStep, kPixelStep, v.dtheta()};
}

/// Copy of a volume surrounded by a reflected spatial halo and a wrapped
/// angular halo, so interpolation needs no boundary branches.
class PaddedVolume {
public:
    PaddedVolume(const Volume& v, int spatial_halo, int angular_halo);

    int halo() const noexcept { return hs_; }
    int angular_halo() const noexcept { return hk_; }
    std::ptrdiff_t row_stride() const noexcept { return pw_; }
    std::ptrdiff_t slice_stride() const noexcept { return plane_; }

    /// Pointer to padded node (x, y, k) in unpadded coordinates.
    const double* node(int x, int y, int k) const noexcept {
        return data_.data() + (static_cast<std::ptrdiff_t>(k + hk_) * plane_ +
                               static_cast<std::ptrdiff_t>(y + hs_) * pw_ + (x + hs_));
    }

    double trilinear(double x, double y, double k) const noexcept {
        const double fx = std::floor(x);
        const double fy = std::floor(y);
        const double fk = std::floor(k);
        const double ax = x - fx;
        const double ay = y - fy;
        const double ak = k - fk;
        const double* p = node(static_cast<int>(fx), static_cast<int>(fy), static_cast<int>(fk));
        auto plane = [&](const double* q) {
            const double a = q[0] + ax * (q[1] - q[0]);
            const double b = q[pw_] + ax * (q[pw_ + 1] - q[pw_]);
            return a + ay * (b - a);
        };
        const double lo = plane(p);
        return lo + ak * (plane(p + plane_) - lo);
    }

private:
    int hs_;
    int hk_;
    std::ptrdiff_t pw_;
    std::ptrdiff_t ph_;
    std::ptrdiff_t plane_;
    std::vector<double> data_;
};

/// Bilinear tap set for an in-plane displacement.
struct PlanarTap {
    std::ptrdiff_t offset = 0;  // relative to the voxel's padded node
    double w00 = 1.0, w10 = 0.0, w01 = 0.0, w11 = 0.0;
};

PlanarTap make_planar_tap(double dx, double dy, std::ptrdiff_t row_stride) noexcept;

inline double apply_tap(const double* node, const PlanarTap& t, std::ptrdiff_t row_stride) noexcept {
    const double* q = node + t.offset;
    // Written as differences from q[0] so constant data is reproduced exactly.
    return q[0] + t.w10 * (q[1] - q[0]) + t.w01 * (q[row_stride] - q[0]) +
           t.w11 * (q[row_stride + 1] - q[0]);
}

/// Halo sizes needed for a frame field on a given grid.
std::array<int, 2> required_halo(const FrameField& frame, const Volume& v);

/// Visits every voxel with its six arm samples, slice-parallel.
/// fn(index, x, y, k, const Arms&).
template <class Fn>
void for_each_arms(const Volume& v, const FrameField& frame, Fn&& fn) {
    if (!frame.matches(v)) throw ParameterError("frame field does not match volume grid");
    const int W = v.width();
    const int H = v.height();
    const int K = v.orientations();
    const auto h = steps(v);
    const auto halo = required_halo(frame, v);
    const PaddedVolume pad(v, halo[0], halo[1]);
    const std::ptrdiff_t rs = pad.row_stride();
    const std::ptrdiff_t ss = pad.slice_stride();

    if (frame.is_invariant()) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < K; ++k) {
            const auto tri = invariant_triple(v.theta(k));
            const PlanarTap fwd_p = make_planar_tap(tri[0][0], tri[0][1], rs);
            const PlanarTap fwd_m = make_planar_tap(-tri[0][0], -tri[0][1], rs);
            const PlanarTap lat_p = make_planar_tap(tri[1][0], tri[1][1], rs);
            const PlanarTap lat_m = make_planar_tap(-tri[1][0], -tri[1][1], rs);
            Arms a;
            for (int y = 0; y < H; ++y) {
                const double* node = pad.node(0, y, k);
                std::size_t idx = v.index(0, y, k);
                for (int x = 0; x < W; ++x, ++node, ++idx) {
                    a.center = *node;
                    a.plus[0] = apply_tap(node, fwd_p, rs);
                    a.minus[0] = apply_tap(node, fwd_m, rs);
                    a.plus[1] = apply_tap(node, lat_p, rs);
                    a.minus[1] = apply_tap(node, lat_m, rs);
                    a.plus[2] = node[ss];
                    a.minus[2] = node[-ss];
                    fn(idx, x, y, k, a);
                }
            }
        }
        return;
    }

    // Grid displacement of arm i: h_i * (bx / dxy, by / dxy, btheta / dtheta).
    const double inv_dt = 1.0 / v.dtheta();
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) {
        Arms a;
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                const std::size_t idx = v.index(x, y, k);
                const auto tri = frame.at(x, y, k);
                a.center = *pad.node(x, y, k);
                for (int i = 0; i < 3; ++i) {
                    const double dx = h[i] * tri[i][0] / kPixelStep;
                    const double dy = h[i] * tri[i][1] / kPixelStep;
                    const double dk = h[i] * tri[i][2] * inv_dt;
                    a.plus[i] = pad.trilinear(x + dx, y + dy, k + dk);
                    a.minus[i] = pad.trilinear(x - dx, y - dy, k - dk);
                }
                fn(idx, x, y, k, a);
            }
        }
    }
}

}  // namespace orientrds::stencil
