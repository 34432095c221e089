#pragma once

#include "orientrds/core.hpp"

namespace orientrds {

/// Finite-difference scheme applied along one direction.
enum class StencilScheme {
    central_first,    // (U+ - U-) / 2
    central_second,   // U+ - 2U + U-
    upwind_forward,   // max{U+ - U, U- - U, 0}: dilation arm
    upwind_backward,  // max{U - U+, U - U-, 0}: erosion arm
};

/// A single directional difference; `direction` is the displacement in grid
/// units (pixels, pixels, orientation steps).
struct StencilSpec {
    Vec3 direction{};
    StencilScheme scheme = StencilScheme::central_first;
};

/// Reference evaluation of one stencil at one voxel via trilinear_sample.
/// Unscaled: no division by the step length.
double evaluate_stencil(const Volume& v, int x, int y, int k, const StencilSpec& spec);

enum class UpwindMode { dilation, erosion };

FrameField invariant_frame(const Volume& v, double xi = 0.1);

/// Central first difference along frame axis, in units per pixel / per radian.
Volume derivative_first(const Volume& v, const FrameField& frame, FrameAxis axis);

/// Central second difference divided by the squared step.
Volume derivative_second(const Volume& v, const FrameField& frame, FrameAxis axis);

/// Lie-Cartan (nu = 0) Laplacian: sum_i g^ii B_i^2 U.
Volume laplacian(const Volume& v, const FrameField& frame, const DiagonalMetric& m);

/// g^22 B_2^2 U + g^33 B_3^2 U: the Laplacian across the local orientation.
Volume perpendicular_laplacian(const Volume& v, const FrameField& frame, const DiagonalMetric& m);

/// sqrt(sum_i g^ii |B_i U|^2) with central differences.
Volume gradient_norm_central(const Volume& v, const FrameField& frame, const DiagonalMetric& m);

/// Rouy-Tourin upwind gradient norm. Each arm difference is bounded by
/// max U - U(p) in dilation mode and by U(p) - min U in erosion mode.
Volume gradient_norm_upwind(const Volume& v, const FrameField& frame, const DiagonalMetric& m,
                            UpwindMode mode);

/// Separable regularisation: isotropic spatial Gaussian per slice (pixels,
/// reflective), then a periodic angular Gaussian (radians). Zero scales are
/// the identity.
Volume gaussian_regularize(const Volume& v, double sigma_spatial, double sigma_angular = 0.0);

namespace detail {

inline double upwind_arm(double plus, double center, double minus, UpwindMode mode) noexcept {
    double d = 0.0;
    if (mode == UpwindMode::dilation) {
        d = plus - center > d ? plus - center : d;
        d = minus - center > d ? minus - center : d;
    } else {
        d = center - plus > d ? center - plus : d;
        d = center - minus > d ? center - minus : d;
    }
    return d;
}

}  // namespace detail

}  // namespace orientrds
