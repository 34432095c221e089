#pragma once

#include <array>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// Per-voxel 3x3 matrix of nested invariant-frame derivatives,
/// entry (i, j) = A_j A_i v (apply A_i first).
class HessianField {
public:
    using Matrix = std::array<std::array<double, 3>, 3>;

    HessianField() = default;
    HessianField(int width, int height, int orientations);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int orientations() const noexcept { return orientations_; }

    Matrix at(int x, int y, int k) const noexcept;
    /// Component (i, j) as a volume.
    const Volume& component(int i, int j) const noexcept { return comp_[i * 3 + j]; }
    Volume& component(int i, int j) noexcept { return comp_[i * 3 + j]; }

private:
    int width_ = 0;
    int height_ = 0;
    int orientations_ = 0;
    std::array<Volume, 9> comp_;
};

/// Nested central differences in the invariant frame, each component then
/// smoothed by a spatial Gaussian of scale reg_sigma (pixels). Optional
/// pre-smoothing of v itself (spatial pixels, angular radians) comes first.
HessianField hessian_field(const Volume& v, double reg_sigma, double pre_sigma = 0.0,
                           double pre_sigma_angular = 0.0);

struct GaugeOptions {
    double xi = 0.1;
    double reg_sigma = 1.0;           // componentwise, spatial, pixels
    double pre_sigma = 1.0;           // on the data, spatial, pixels
    double pre_sigma_angular = 0.4;   // on the data, radians
    double degeneracy_tol = 0.05;
};

/// Per-voxel gauge frame from the smallest right singular vector of
/// M^-1 H M^-1, M = diag(xi, xi, 1). Stored vectors use the same scaling as
/// the invariant frame (unit spatial length for the lateral axis), so data
/// aligned with A_1 reproduce the invariant frame exactly.
///
/// Voxels whose two smallest singular values are closer than degeneracy_tol
/// times the largest, or where H vanishes, keep the invariant frame; their
/// number is reported by FrameField::fallback_count().
///
/// Nested angular differences on the raw score are too noisy to resolve
/// curvature at typical K, so the data are pre-smoothed as in GaugeOptions;
/// this overload uses the default pre-smoothing scales.
FrameField fit_gauge_frame(const Volume& v, double xi, double reg_sigma,
                           double degeneracy_tol = 0.05);

FrameField fit_gauge_frame(const Volume& v, const GaugeOptions& opt);

/// Overload that reuses a precomputed matrix field.
FrameField fit_gauge_frame(const HessianField& h, double xi, double degeneracy_tol = 0.05);

/// Curvature dtheta/ds of the forward gauge vector at a voxel.
double frame_curvature(const FrameField& frame, int x, int y, int k) noexcept;

}  // namespace orientrds
