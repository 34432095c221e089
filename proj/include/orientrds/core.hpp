#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "orientrds/errors.hpp"

namespace orientrds {

/// Spatial grid step in pixels. Every spatial quantity in the library is
/// expressed in pixels, so this is fixed.
inline constexpr double kPixelStep = 1.0;

/// Single-channel image, row-major (x fastest).
class Image {
public:
    Image() = default;
    Image(int width, int height, double fill = 0.0);
    Image(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * width_ + x;
    }
    double& operator()(int x, int y) noexcept { return values_[index(x, y)]; }
    double operator()(int x, int y) const noexcept { return values_[index(x, y)]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool same_shape(const Image& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }
    double min() const;
    double max() const;
    bool all_finite() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Scalar field on the sampled position-orientation space. Orientation k sits
/// at angle k * 2pi/K; the orientation axis is periodic. Storage is x fastest,
/// then y, then k.
class Volume {
public:
    Volume() = default;
    Volume(int width, int height, int orientations, double fill = 0.0);
    Volume(int width, int height, int orientations, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int orientations() const noexcept { return orientations_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t slice_size() const noexcept {
        return static_cast<std::size_t>(width_) * height_;
    }
    double dtheta() const noexcept {
        return 2.0 * std::numbers::pi / orientations_;
    }
    double theta(int k) const noexcept { return k * dtheta(); }

    std::size_t index(int x, int y, int k) const noexcept {
        return (static_cast<std::size_t>(k) * height_ + y) * width_ + x;
    }
    double& operator()(int x, int y, int k) noexcept { return values_[index(x, y, k)]; }
    double operator()(int x, int y, int k) const noexcept {
        return values_[index(x, y, k)];
    }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    Image slice(int k) const;
    void set_slice(int k, const Image& image);

    bool same_shape(const Volume& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ &&
               orientations_ == other.orientations_;
    }
    double min() const;
    double max() const;
    bool all_finite() const;

private:
    int width_ = 0;
    int height_ = 0;
    int orientations_ = 0;
    std::vector<double> values_;
};

/// Boolean cell mask for images (depth 1) and volumes. A set cell is evolved,
/// a cleared cell is held at its initial value.
struct Mask {
    int width = 0;
    int height = 0;
    int depth = 1;
    std::vector<std::uint8_t> cells;

    Mask() = default;
    Mask(int w, int h, int d = 1, bool value = false)
        : width(w), height(h), depth(d),
          cells(static_cast<std::size_t>(w) * h * d, value ? 1 : 0) {}

    std::size_t size() const noexcept { return cells.size(); }
    bool operator[](std::size_t i) const noexcept { return cells[i] != 0; }
    bool at(int x, int y, int z = 0) const noexcept {
        return cells[(static_cast<std::size_t>(z) * height + y) * width + x] != 0;
    }
    void set(int x, int y, int z, bool value) noexcept {
        cells[(static_cast<std::size_t>(z) * height + y) * width + x] = value ? 1 : 0;
    }
    std::size_t count() const noexcept;
    bool matches(const Image& image) const noexcept {
        return depth == 1 && width == image.width() && height == image.height();
    }
    bool matches(const Volume& volume) const noexcept {
        return width == volume.width() && height == volume.height() &&
               depth == volume.orientations();
    }
    /// Replicates a depth-1 mask along the orientation axis.
    Mask extruded(int orientations) const;
};

using BinaryImage = Mask;

/// Diagonal metric with respect to a frame: g_ii = G(B_i, B_i).
struct DiagonalMetric {
    double g11 = 1.0;
    double g22 = 1.0;
    double g33 = 1.0;

    DiagonalMetric() = default;
    DiagonalMetric(double a, double b, double c);

    /// g11 = xi^2, g22 = (xi/zeta)^2, g33 = 1.
    static DiagonalMetric from_anisotropy(double xi, double zeta);
    /// Metric whose dual components are the given values.
    static DiagonalMetric from_dual(double d11, double d22, double d33);

    double component(int i) const noexcept { return i == 0 ? g11 : i == 1 ? g22 : g33; }
    double dual(int i) const noexcept { return 1.0 / component(i); }
};

using Vec3 = std::array<double, 3>;

/// Which frame vector a directional operator follows.
enum class FrameAxis : int { forward = 0, lateral = 1, angular = 2 };

/// Per-voxel frame {B1, B2, B3}. Components are (x, y, theta) in pixels and
/// radians. The stored vectors reduce to the invariant frame
/// (cos, sin, 0), (-sin, cos, 0), (0, 0, 1) for aligned data; the
/// G_xi-orthonormal vectors are B1/xi, B2/xi, B3 (see metric_vector).
class FrameField {
public:
    using Triple = std::array<Vec3, 3>;

    FrameField() = default;

    static FrameField invariant(int width, int height, int orientations, double xi = 0.1);
    static FrameField from_triples(int width, int height, int orientations, double xi,
                                   std::vector<Triple> triples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int orientations() const noexcept { return orientations_; }
    double xi() const noexcept { return xi_; }
    bool is_invariant() const noexcept { return triples_.empty(); }
    bool matches(const Volume& v) const noexcept {
        return width_ == v.width() && height_ == v.height() &&
               orientations_ == v.orientations();
    }

    Triple at(int x, int y, int k) const noexcept;
    Vec3 vector(FrameAxis axis, int x, int y, int k) const noexcept {
        return at(x, y, k)[static_cast<int>(axis)];
    }
    /// Same direction as vector(), scaled to unit length in G_xi.
    Vec3 metric_vector(FrameAxis axis, int x, int y, int k) const noexcept;
    /// G_xi inner product between two stored axes at a voxel.
    double metric_inner(FrameAxis a, FrameAxis b, int x, int y, int k) const noexcept;

    /// Voxels where fitting fell back to the invariant frame.
    std::size_t fallback_count() const noexcept { return fallbacks_; }
    void set_fallback_count(std::size_t n) noexcept { fallbacks_ = n; }

    const std::vector<Triple>& triples() const noexcept { return triples_; }

private:
    int width_ = 0;
    int height_ = 0;
    int orientations_ = 0;
    double xi_ = 0.1;
    std::size_t fallbacks_ = 0;
    std::vector<Triple> triples_;
};

/// Invariant frame triple at angle theta.
FrameField::Triple invariant_triple(double theta) noexcept;

/// Full parameter bundle of the position-orientation RDS evolution.
struct RdsParams {
    DiagonalMetric metric_D = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_M = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_g = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_S = DiagonalMetric::from_anisotropy(0.1, 1.0);
    double lambda = 1.0;
    double sigma = 1.0;
    double rho = 1.0;
    double nu = 1.0;
    double shock_eps = 1e-2;
    bool use_gauge = false;
    double xi = 0.1;

    // Refresh cadence of the guidance fields and of the gauge frame (steps).
    int guidance_refresh = 1;
    int frame_refresh = 5;
    // Gauge fitting controls.
    double gauge_reg_sigma = 1.0;
    double gauge_pre_sigma = 1.0;
    double gauge_pre_sigma_angular = 0.4;
    double degeneracy_tol = 0.05;

    /// Switch metrics use zeta = 1; only the diffusion and shock anisotropies vary.
    static RdsParams from_anisotropy(double zeta_D, double zeta_M, double xi = 0.1);

    void validate() const;
};

/// k mod K with a non-negative representative.
constexpr int wrap_orientation(int k, int K) noexcept {
    const int r = k % K;
    return r < 0 ? r + K : r;
}

/// Half-sample symmetric reflection: v[-1-m] = v[m], v[n+m] = v[n-1-m].
constexpr int reflect_spatial(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    int r = i % period;
    if (r < 0) r += period;
    return r < n ? r : period - 1 - r;
}

/// Trilinear interpolation with reflective spatial and periodic angular
/// boundaries. x, y in pixels, k in orientation-index units.
double trilinear_sample(const Volume& v, double x, double y, double k) noexcept;

/// Bilinear interpolation with reflective boundaries.
double bilinear_sample(const Image& f, double x, double y) noexcept;

/// Rotation by +90 degrees about the image center: (x, y) -> (-y, x).
/// Requires a square image.
Image rotate90(const Image& f);

/// Spatial +90 degree rotation combined with the orientation shift K/4,
/// i.e. the left-regular action of the quarter turn. Requires 4 | K and a
/// square grid.
Volume rotate90(const Volume& v);

/// Integer spatial shift with reflective fill.
Image translate(const Image& f, int dx, int dy);
Volume translate(const Volume& v, int dx, int dy);

/// Relative L2 distance ||a - b|| / max(||b||, tiny).
double relative_l2(std::span<const double> a, std::span<const double> b);

}  // namespace orientrds
