#include "orientrds/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace orientrds {

namespace {

void check_dims(int w, int h, int k) {
    if (w <= 0 || h <= 0 || k <= 0) {
        throw ParameterError("grid dimensions must be positive, got " + std::to_string(w) +
                             "x" + std::to_string(h) + "x" + std::to_string(k));
    }
}

double span_min(std::span<const double> s) {
    return s.empty() ? 0.0 : *std::min_element(s.begin(), s.end());
}

double span_max(std::span<const double> s) {
    return s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
}

bool span_finite(std::span<const double> s) {
    return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Image::Image(int width, int height, double fill) : width_(width), height_(height) {
    check_dims(width, height, 1);
    values_.assign(static_cast<std::size_t>(width) * height, fill);
}

Image::Image(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height, 1);
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw ParameterError("image data length does not match its shape");
    }
}

double Image::min() const { return span_min(values_); }
double Image::max() const { return span_max(values_); }
bool Image::all_finite() const { return span_finite(values_); }

Volume::Volume(int width, int height, int orientations, double fill)
    : width_(width), height_(height), orientations_(orientations) {
    check_dims(width, height, orientations);
    values_.assign(static_cast<std::size_t>(width) * height * orientations, fill);
}

Volume::Volume(int width, int height, int orientations, std::vector<double> values)
    : width_(width), height_(height), orientations_(orientations), values_(std::move(values)) {
    check_dims(width, height, orientations);
    if (values_.size() != static_cast<std::size_t>(width) * height * orientations) {
        throw ParameterError("volume data length does not match its shape");
    }
}

Image Volume::slice(int k) const {
    const auto n = slice_size();
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(n * k);
    return Image(width_, height_, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(n)));
}

void Volume::set_slice(int k, const Image& image) {
    if (image.width() != width_ || image.height() != height_) {
        throw ParameterError("slice shape does not match volume");
    }
    std::copy(image.values().begin(), image.values().end(),
              values_.begin() + static_cast<std::ptrdiff_t>(slice_size() * k));
}

double Volume::min() const { return span_min(values_); }
double Volume::max() const { return span_max(values_); }
bool Volume::all_finite() const { return span_finite(values_); }

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(),
                                                  [](std::uint8_t c) { return c != 0; }));
}

Mask Mask::extruded(int orientations) const {
    if (depth != 1) throw ParameterError("only depth-1 masks can be extruded");
    Mask out(width, height, orientations);
    const std::size_t n = cells.size();
    for (int k = 0; k < orientations; ++k) {
        std::copy(cells.begin(), cells.end(),
                  out.cells.begin() + static_cast<std::ptrdiff_t>(n * k));
    }
    return out;
}

DiagonalMetric::DiagonalMetric(double a, double b, double c) : g11(a), g22(b), g33(c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(c)) {
        throw ParameterError("metric components must be positive and finite");
    }
}

DiagonalMetric DiagonalMetric::from_anisotropy(double xi, double zeta) {
    if (!(xi > 0.0) || !(zeta > 0.0)) {
        throw ParameterError("xi and zeta must be positive");
    }
    return {xi * xi, (xi / zeta) * (xi / zeta), 1.0};
}

DiagonalMetric DiagonalMetric::from_dual(double d11, double d22, double d33) {
    if (!(d11 > 0.0) || !(d22 > 0.0) || !(d33 > 0.0)) {
        throw ParameterError("dual metric components must be positive");
    }
    return {1.0 / d11, 1.0 / d22, 1.0 / d33};
}

FrameField::Triple invariant_triple(double theta) noexcept {
    double c = std::cos(theta);
    double s = std::sin(theta);
    // Snap the few ulps of rounding at multiples of pi/2 so that grid-aligned
    // arms land exactly on nodes.
    auto snap = [](double v) {
        const double r = std::round(v);
        return std::abs(v - r) < 1e-12 ? r + 0.0 : v;
    };
    c = snap(c);
    s = snap(s);
    return {Vec3{c, s, 0.0}, Vec3{-s + 0.0, c, 0.0}, Vec3{0.0, 0.0, 1.0}};
}

FrameField FrameField::invariant(int width, int height, int orientations, double xi) {
    check_dims(width, height, orientations);
    if (!(xi > 0.0)) throw ParameterError("xi must be positive");
    FrameField f;
    f.width_ = width;
    f.height_ = height;
    f.orientations_ = orientations;
    f.xi_ = xi;
    return f;
}

FrameField FrameField::from_triples(int width, int height, int orientations, double xi,
                                    std::vector<Triple> triples) {
    FrameField f = invariant(width, height, orientations, xi);
    if (triples.size() != static_cast<std::size_t>(width) * height * orientations) {
        throw ParameterError("frame triple count does not match grid");
    }
    f.triples_ = std::move(triples);
    return f;
}

FrameField::Triple FrameField::at(int x, int y, int k) const noexcept {
    if (triples_.empty()) {
        return invariant_triple(k * 2.0 * std::numbers::pi / orientations_);
    }
    return triples_[(static_cast<std::size_t>(k) * height_ + y) * width_ + x];
}

Vec3 FrameField::metric_vector(FrameAxis axis, int x, int y, int k) const noexcept {
    Vec3 v = vector(axis, x, y, k);
    if (axis != FrameAxis::angular) {
        for (double& c : v) c /= xi_;
    }
    return v;
}

double FrameField::metric_inner(FrameAxis a, FrameAxis b, int x, int y, int k) const noexcept {
    const Vec3 u = metric_vector(a, x, y, k);
    const Vec3 v = metric_vector(b, x, y, k);
    return xi_ * xi_ * (u[0] * v[0] + u[1] * v[1]) + u[2] * v[2];
}

RdsParams RdsParams::from_anisotropy(double zeta_D, double zeta_M, double xi) {
    RdsParams p;
    p.xi = xi;
    p.metric_D = DiagonalMetric::from_anisotropy(xi, zeta_D);
    p.metric_M = DiagonalMetric::from_anisotropy(xi, zeta_M);
    p.metric_g = DiagonalMetric::from_anisotropy(xi, 1.0);
    p.metric_S = DiagonalMetric::from_anisotropy(xi, 1.0);
    return p;
}

void RdsParams::validate() const {
    for (const auto* m : {&metric_D, &metric_M, &metric_g, &metric_S}) {
        if (!(m->g11 > 0.0) || !(m->g22 > 0.0) || !(m->g33 > 0.0)) {
            throw ParameterError("metric components must be positive");
        }
    }
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (!(shock_eps > 0.0)) throw ParameterError("shock_eps must be positive");
    if (!(xi > 0.0)) throw ParameterError("xi must be positive");
    if (sigma < 0.0 || rho < 0.0 || nu < 0.0 || gauge_reg_sigma < 0.0 || gauge_pre_sigma < 0.0 ||
        gauge_pre_sigma_angular < 0.0) {
        throw ParameterError("regularisation scales must be non-negative");
    }
    if (guidance_refresh < 1 || frame_refresh < 1) {
        throw ParameterError("refresh cadences must be at least one step");
    }
}

double trilinear_sample(const Volume& v, double x, double y, double k) noexcept {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double fk = std::floor(k);
    const double ax = x - fx;
    const double ay = y - fy;
    const double ak = k - fk;
    const int W = v.width();
    const int H = v.height();
    const int K = v.orientations();
    const int x0 = reflect_spatial(static_cast<int>(fx), W);
    const int x1 = reflect_spatial(static_cast<int>(fx) + 1, W);
    const int y0 = reflect_spatial(static_cast<int>(fy), H);
    const int y1 = reflect_spatial(static_cast<int>(fy) + 1, H);
    const int k0 = wrap_orientation(static_cast<int>(fk), K);
    const int k1 = wrap_orientation(static_cast<int>(fk) + 1, K);
    auto plane = [&](int kk) {
        const double a = v(x0, y0, kk) * (1.0 - ax) + v(x1, y0, kk) * ax;
        const double b = v(x0, y1, kk) * (1.0 - ax) + v(x1, y1, kk) * ax;
        return a * (1.0 - ay) + b * ay;
    };
    return plane(k0) * (1.0 - ak) + plane(k1) * ak;
}

double bilinear_sample(const Image& f, double x, double y) noexcept {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const double ax = x - fx;
    const double ay = y - fy;
    const int x0 = reflect_spatial(static_cast<int>(fx), f.width());
    const int x1 = reflect_spatial(static_cast<int>(fx) + 1, f.width());
    const int y0 = reflect_spatial(static_cast<int>(fy), f.height());
    const int y1 = reflect_spatial(static_cast<int>(fy) + 1, f.height());
    const double a = f(x0, y0) * (1.0 - ax) + f(x1, y0) * ax;
    const double b = f(x0, y1) * (1.0 - ax) + f(x1, y1) * ax;
    return a * (1.0 - ay) + b * ay;
}

Image rotate90(const Image& f) {
    if (f.width() != f.height()) throw ParameterError("rotate90 needs a square image");
    const int n = f.width();
    Image out(n, n);
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) out(x, y) = f(y, n - 1 - x);
    }
    return out;
}

Volume rotate90(const Volume& v) {
    if (v.width() != v.height()) throw ParameterError("rotate90 needs a square grid");
    if (v.orientations() % 4 != 0) {
        throw ParameterError("rotate90 on volumes needs the orientation count divisible by 4");
    }
    const int n = v.width();
    const int K = v.orientations();
    const int shift = K / 4;
    Volume out(n, n, K);
    for (int k = 0; k < K; ++k) {
        const int src_k = wrap_orientation(k - shift, K);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) out(x, y, k) = v(y, n - 1 - x, src_k);
        }
    }
    return out;
}

Image translate(const Image& f, int dx, int dy) {
    Image out(f.width(), f.height());
    for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) {
            out(x, y) = f(reflect_spatial(x - dx, f.width()), reflect_spatial(y - dy, f.height()));
        }
    }
    return out;
}

Volume translate(const Volume& v, int dx, int dy) {
    Volume out(v.width(), v.height(), v.orientations());
    for (int k = 0; k < v.orientations(); ++k) {
        for (int y = 0; y < v.height(); ++y) {
            for (int x = 0; x < v.width(); ++x) {
                out(x, y, k) =
                    v(reflect_spatial(x - dx, v.width()), reflect_spatial(y - dy, v.height()), k);
            }
        }
    }
    return out;
}

double relative_l2(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ParameterError("relative_l2: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        num += d * d;
        den += b[i] * b[i];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), std::numeric_limits<double>::min());
}

}  // namespace orientrds
