#include "orientrds/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace orientrds {

namespace {

constexpr double kPi = std::numbers::pi;

double profile(double d, double width) noexcept {
    return std::exp(-0.5 * d * d / (width * width));
}

// Pixels on (within 0.75 px of) a line, and far (beyond 3 px) from every line.
// On-path and off-path radii in units of the line width.
constexpr double kOnPath = 0.75;
constexpr double kOffPath = 3.0;

}  // namespace

double Line::distance(double x, double y) const noexcept {
    return std::abs(-(x - cx) * std::sin(angle) + (y - cy) * std::cos(angle));
}

Image draw_lines(int width, int height, const std::vector<Line>& lines, double line_width) {
    if (width < 1 || height < 1) throw ParameterError("image shape must be positive");
    if (!(line_width > 0.0)) throw ParameterError("line width must be positive");
    Image img(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = 0.0;
            for (const auto& l : lines) v = std::max(v, profile(l.distance(x, y), line_width));
            img(x, y) = v;
        }
    }
    return img;
}

CrossingFixture crossing_fixture(int size, int hole_size, double line_width, double half_angle,
                                 double axis_angle) {
    if (size < 8 || hole_size < 1 || hole_size >= size || !(half_angle > 0.0) ||
        !(half_angle < 0.5 * kPi)) {
        throw ParameterError("invalid crossing fixture geometry");
    }
    CrossingFixture fx;
    const double c = 0.5 * (size - 1);
    fx.lines = {Line{c, c, axis_angle + half_angle}, Line{c, c, axis_angle - half_angle}};
    fx.clean = draw_lines(size, size, {fx.lines[0], fx.lines[1]}, line_width);
    fx.line_width = line_width;
    fx.hole_size = hole_size;
    fx.hole_x0 = (size - hole_size) / 2;
    fx.hole_y0 = (size - hole_size) / 2;
    fx.hole = Mask(size, size);
    fx.damaged = fx.clean;
    for (int y = fx.hole_y0; y < fx.hole_y0 + hole_size; ++y) {
        for (int x = fx.hole_x0; x < fx.hole_x0 + hole_size; ++x) {
            fx.hole.set(x, y, 0, true);
            fx.damaged(x, y) = 0.0;
        }
    }
    return fx;
}

Image circle_fixture(int size, double radius, double line_width) {
    if (size < 8 || !(radius > 0.0) || !(line_width > 0.0)) {
        throw ParameterError("invalid circle fixture geometry");
    }
    const double c = 0.5 * (size - 1);
    Image img(size, size);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            img(x, y) = profile(std::hypot(x - c, y - c) - radius, line_width);
        }
    }
    return img;
}

Image spiral_fixture(int size, double pitch, double line_width) {
    if (size < 8 || !(pitch > 0.0) || !(line_width > 0.0)) {
        throw ParameterError("invalid spiral fixture geometry");
    }
    const double c = 0.5 * (size - 1);
    Image img(size, size);
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) {
            const double r = std::hypot(x - c, y - c);
            const double phi = std::atan2(y - c, x - c) + kPi;
            // Radial offset to the nearest arm r = pitch * (phi / 2pi + n).
            double s = std::fmod(r - pitch * phi / (2.0 * kPi), pitch);
            if (s < 0.0) s += pitch;
            const double d = std::min(s, pitch - s);
            img(x, y) = r < 0.5 * pitch ? 0.0 : profile(d, line_width);
        }
    }
    return img;
}

Image ridge_fixture(int size, double angle, double line_width) {
    const double c = 0.5 * (size - 1);
    return draw_lines(size, size, {Line{c, c, angle}}, line_width);
}

namespace {

// Mean on-path minus mean off-path intensity over the hole.
double hole_contrast(const Image& img, const CrossingFixture& fx) {
    double on = 0.0, off = 0.0;
    int n_on = 0, n_off = 0;
    for (int y = fx.hole_y0; y < fx.hole_y0 + fx.hole_size; ++y) {
        for (int x = fx.hole_x0; x < fx.hole_x0 + fx.hole_size; ++x) {
            const double d = std::min(fx.lines[0].distance(x, y), fx.lines[1].distance(x, y));
            if (d <= kOnPath * fx.line_width) {
                on += img(x, y);
                ++n_on;
            } else if (d >= kOffPath * fx.line_width) {
                off += img(x, y);
                ++n_off;
            }
        }
    }
    if (n_on == 0 || n_off == 0) throw ParameterError("hole too small to score line paths");
    return on / n_on - off / n_off;
}

}  // namespace

double line_path_score(const Image& result, const CrossingFixture& fx) {
    if (!result.same_shape(fx.clean)) throw ParameterError("result does not match fixture");
    const double reference = hole_contrast(fx.clean, fx);
    return std::max(0.0, hole_contrast(result, fx)) / reference;
}

Mask dilate(const Mask& m, int radius) {
    if (m.depth != 1) throw ParameterError("dilate expects a depth-1 mask");
    if (radius <= 0) return m;
    Mask out(m.width, m.height);
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(x, y)) continue;
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int xx = x + dx;
                    const int yy = y + dy;
                    if (xx >= 0 && yy >= 0 && xx < m.width && yy < m.height) out.set(xx, yy, 0, true);
                }
            }
        }
    }
    return out;
}

}  // namespace orientrds
