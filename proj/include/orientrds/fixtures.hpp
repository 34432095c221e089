#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// Straight line through (cx, cy) with direction angle `angle` (radians,
/// counter-clockwise from +x with y pointing down the rows).
struct Line {
    double cx = 0.0;
    double cy = 0.0;
    double angle = 0.0;

    double distance(double x, double y) const noexcept;
};

/// Bright lines with a Gaussian cross profile of width `width` on a zero
/// background; overlapping lines combine by maximum.
Image draw_lines(int width, int height, const std::vector<Line>& lines, double line_width = 1.0);

struct CrossingFixture {
    Image clean;
    Image damaged;  // clean with the hole set to zero
    Mask hole;      // set inside the square hole
    std::array<Line, 2> lines;
    int hole_x0 = 0, hole_y0 = 0, hole_size = 0;
    double line_width = 1.0;
};

/// Two lines at axis_angle +- half_angle crossing at the image centre,
/// centred square hole.
CrossingFixture crossing_fixture(int size = 64, int hole_size = 14, double line_width = 1.0,
                                 double half_angle = 0.5235987755982988, double axis_angle = 0.0);

/// Bright ring of radius r centred in the image.
Image circle_fixture(int size = 64, double radius = 20.0, double line_width = 1.0);

/// Single-arm Archimedean spiral with arm spacing `pitch` pixels.
Image spiral_fixture(int size = 64, double pitch = 8.0, double line_width = 1.0);

/// One straight line through the centre at `angle`.
Image ridge_fixture(int size = 64, double angle = 0.0, double line_width = 1.0);

/// Recovery of the line paths inside the hole: on-path minus off-path mean
/// intensity of `result`, divided by the same contrast of the clean image.
/// 1 means full recovery, 0 none (negative contrast is clipped to 0).
/// On-path means within 0.75 line widths of a line, off-path beyond 3.
double line_path_score(const Image& result, const CrossingFixture& fx);

/// Square-dilated copy of a depth-1 mask.
Mask dilate(const Mask& m, int radius);

}  // namespace orientrds
