#include "orientrds/diffops.hpp"

#include <algorithm>
#include <cmath>

#include "orientrds/filters.hpp"
#include "orientrds/stencil.hpp"

namespace orientrds {

using stencil::Arms;

double evaluate_stencil(const Volume& v, int x, int y, int k, const StencilSpec& spec) {
    const auto& d = spec.direction;
    const double c = v(x, y, k);
    const double p = trilinear_sample(v, x + d[0], y + d[1], k + d[2]);
    const double m = trilinear_sample(v, x - d[0], y - d[1], k - d[2]);
    switch (spec.scheme) {
        case StencilScheme::central_first: return 0.5 * (p - m);
        case StencilScheme::central_second: return p - 2.0 * c + m;
        case StencilScheme::upwind_forward:
            return detail::upwind_arm(p, c, m, UpwindMode::dilation);
        case StencilScheme::upwind_backward:
            return detail::upwind_arm(p, c, m, UpwindMode::erosion);
    }
    return 0.0;
}

FrameField invariant_frame(const Volume& v, double xi) {
    return FrameField::invariant(v.width(), v.height(), v.orientations(), xi);
}

Volume derivative_first(const Volume& v, const FrameField& frame, FrameAxis axis) {
    Volume out(v.width(), v.height(), v.orientations());
    const int i = static_cast<int>(axis);
    const double scale = 0.5 / stencil::steps(v)[i];
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        out[idx] = (a.plus[i] - a.minus[i]) * scale;
    });
    return out;
}

Volume derivative_second(const Volume& v, const FrameField& frame, FrameAxis axis) {
    Volume out(v.width(), v.height(), v.orientations());
    const int i = static_cast<int>(axis);
    const double h = stencil::steps(v)[i];
    const double scale = 1.0 / (h * h);
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        out[idx] = (a.plus[i] - 2.0 * a.center + a.minus[i]) * scale;
    });
    return out;
}

Volume laplacian(const Volume& v, const FrameField& frame, const DiagonalMetric& m) {
    Volume out(v.width(), v.height(), v.orientations());
    const auto h = stencil::steps(v);
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = m.dual(i) / (h[i] * h[i]);
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) acc += c[i] * (a.plus[i] - 2.0 * a.center + a.minus[i]);
        out[idx] = acc;
    });
    return out;
}

Volume perpendicular_laplacian(const Volume& v, const FrameField& frame, const DiagonalMetric& m) {
    Volume out(v.width(), v.height(), v.orientations());
    const auto h = stencil::steps(v);
    const double c1 = m.dual(1) / (h[1] * h[1]);
    const double c2 = m.dual(2) / (h[2] * h[2]);
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        out[idx] = c1 * (a.plus[1] - 2.0 * a.center + a.minus[1]) +
                   c2 * (a.plus[2] - 2.0 * a.center + a.minus[2]);
    });
    return out;
}

Volume gradient_norm_central(const Volume& v, const FrameField& frame, const DiagonalMetric& m) {
    Volume out(v.width(), v.height(), v.orientations());
    const auto h = stencil::steps(v);
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = m.dual(i) / (4.0 * h[i] * h[i]);
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = a.plus[i] - a.minus[i];
            acc += c[i] * d * d;
        }
        out[idx] = std::sqrt(acc);
    });
    return out;
}

Volume gradient_norm_upwind(const Volume& v, const FrameField& frame, const DiagonalMetric& m,
                            UpwindMode mode) {
    Volume out(v.width(), v.height(), v.orientations());
    const auto h = stencil::steps(v);
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = m.dual(i) / (h[i] * h[i]);
    stencil::for_each_arms(v, frame, [&](std::size_t idx, int, int, int, const Arms& a) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double d = detail::upwind_arm(a.plus[i], a.center, a.minus[i], mode);
            acc += c[i] * d * d;
        }
        out[idx] = std::sqrt(acc);
    });
    return out;
}

Volume gaussian_regularize(const Volume& v, double sigma_spatial, double sigma_angular) {
    if (!(sigma_spatial >= 0.0) || !(sigma_angular >= 0.0)) {
        throw ParameterError("regularisation scales must be non-negative");
    }
    Volume out = v;
    gaussian_blur_slices(out, sigma_spatial);
    if (sigma_angular > 0.0) gaussian_blur_orientations(out, sigma_angular / v.dtheta());
    return out;
}

}  // namespace orientrds
