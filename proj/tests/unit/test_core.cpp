#include <doctest.h>

#include <numbers>

#include "orientrds/core.hpp"
#include "support.hpp"

using namespace orientrds;
using namespace testing_support;

TEST_CASE("wrap_orientation maps onto [0, K)") {
    CHECK(wrap_orientation(-1, 32) == 31);
    CHECK(wrap_orientation(32, 32) == 0);
    CHECK(wrap_orientation(5, 32) == 5);
    CHECK(wrap_orientation(-65, 32) == 31);
    for (int k = -100; k < 100; ++k) {
        const int r = wrap_orientation(k, 7);
        CHECK(r >= 0);
        CHECK(r < 7);
        CHECK(wrap_orientation(r, 7) == r);
    }
}

TEST_CASE("reflect_spatial uses the half-sample mirror") {
    CHECK(reflect_spatial(-1, 10) == 0);
    CHECK(reflect_spatial(10, 10) == 9);
    CHECK(reflect_spatial(3, 10) == 3);
    CHECK(reflect_spatial(-2, 10) == 1);
    CHECK(reflect_spatial(11, 10) == 8);
    CHECK(reflect_spatial(-5, 1) == 0);
    for (int i = -40; i < 40; ++i) {
        const int r = reflect_spatial(i, 10);
        CHECK(r >= 0);
        CHECK(r < 10);
        CHECK(reflect_spatial(r, 10) == r);
        // v[-1-m] = v[m]
        CHECK(reflect_spatial(-1 - i, 10) == reflect_spatial(i, 10));
    }
}

TEST_CASE("trilinear_sample reproduces nodes, constants and linear data") {
    const Volume rnd = random_volume(6, 5, 4, 7);
    for (int k = 0; k < 4; ++k)
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 6; ++x) CHECK(trilinear_sample(rnd, x, y, k) == rnd(x, y, k));

    const Volume c(5, 5, 4, 2.5);
    CHECK(trilinear_sample(c, 1.3, 2.7, 3.6) == doctest::Approx(2.5));
    CHECK(trilinear_sample(c, -3.3, 9.1, -0.4) == doctest::Approx(2.5));

    const Volume lin = sample_volume(8, 8, 4, [](double x, double, double) { return x; });
    CHECK(trilinear_sample(lin, 2.5, 3.0, 1.0) == doctest::Approx(2.5));
    CHECK(trilinear_sample(lin, 4.25, 1.75, 2.5) == doctest::Approx(4.25));
}

TEST_CASE("trilinear_sample wraps orientation and reflects space") {
    const Volume rnd = random_volume(4, 4, 4, 11);
    CHECK(trilinear_sample(rnd, 1, 2, 4) == rnd(1, 2, 0));
    CHECK(trilinear_sample(rnd, 1, 2, -1) == rnd(1, 2, 3));
    CHECK(trilinear_sample(rnd, -1, 2, 0) == rnd(0, 2, 0));
    CHECK(trilinear_sample(rnd, 4, 2, 0) == rnd(3, 2, 0));
    CHECK(trilinear_sample(rnd, 1, 2, 3.5) == doctest::Approx(0.5 * (rnd(1, 2, 3) + rnd(1, 2, 0))));
}

TEST_CASE("trilinear_sample stays inside the hull of its eight neighbours") {
    const Volume rnd = random_volume(7, 7, 6, 3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(0.0, 5.999);
    std::uniform_real_distribution<double> ang(0.0, 5.999);
    for (int trial = 0; trial < 500; ++trial) {
        const double x = pos(rng), y = pos(rng), k = ang(rng);
        const int x0 = static_cast<int>(x), y0 = static_cast<int>(y), k0 = static_cast<int>(k);
        double lo = 1e9, hi = -1e9;
        for (int dz = 0; dz < 2; ++dz)
            for (int dy = 0; dy < 2; ++dy)
                for (int dx = 0; dx < 2; ++dx) {
                    const double v = rnd(x0 + dx, y0 + dy, wrap_orientation(k0 + dz, 6));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
        const double s = trilinear_sample(rnd, x, y, k);
        CHECK(s >= lo - 1e-15);
        CHECK(s <= hi + 1e-15);
    }
}

TEST_CASE("DiagonalMetric validates and exposes duals") {
    CHECK_THROWS_AS(DiagonalMetric(0.0, 1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(DiagonalMetric(1.0, -1.0, 1.0), ParameterError);
    const auto m = DiagonalMetric::from_anisotropy(0.1, 2.0);
    CHECK(m.g11 == doctest::Approx(0.01));
    CHECK(m.g22 == doctest::Approx(0.0025));
    CHECK(m.g33 == 1.0);
    for (int i = 0; i < 3; ++i) CHECK(m.dual(i) * m.component(i) == doctest::Approx(1.0));
    const auto d = DiagonalMetric::from_dual(1.0, 2.0, 4.0);
    CHECK(d.g33 == doctest::Approx(0.25));
}

TEST_CASE("invariant frame vectors are metric-orthonormal and right-handed") {
    const FrameField f = FrameField::invariant(3, 3, 8, 0.1);
    for (int k = 0; k < 8; ++k) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const double g = f.metric_inner(static_cast<FrameAxis>(a), static_cast<FrameAxis>(b), 1, 1, k);
                CHECK(g == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
            }
        const auto t = f.at(0, 0, k);
        const double det = t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                           t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                           t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
        CHECK(det > 0.0);
        CHECK(t[1][2] == 0.0);
    }
    const auto t2 = f.at(0, 0, 2);  // theta = pi/2
    CHECK(t2[0] == Vec3{0.0, 1.0, 0.0});
    CHECK(t2[1] == Vec3{-1.0, 0.0, 0.0});
}

TEST_CASE("quarter-turn rotation of images and volumes") {
    const Image f = random_image(5, 5, 1);
    const Image r = rotate90(f);
    // Four quarter turns give the identity.
    const Image r4 = rotate90(rotate90(rotate90(r)));
    CHECK(max_abs_diff(r4.values(), f.values()) == 0.0);
    CHECK_THROWS_AS(rotate90(Image(4, 5)), ParameterError);

    const Volume v = random_volume(6, 6, 8, 2);
    const Volume rv = rotate90(v);
    for (int k = 0; k < 8; ++k) {
        const Image expect = rotate90(v.slice(wrap_orientation(k - 2, 8)));
        CHECK(max_abs_diff(rv.slice(k).values(), expect.values()) == 0.0);
    }
    CHECK_THROWS_AS(rotate90(Volume(6, 6, 6)), ParameterError);
}

TEST_CASE("translate shifts content with reflective fill") {
    const Image f = random_image(6, 4, 9);
    const Image t = translate(f, 2, 1);
    CHECK(t(4, 3) == f(2, 2));
    CHECK(t(0, 0) == f(reflect_spatial(-2, 6), reflect_spatial(-1, 4)));
}

TEST_CASE("Mask extrusion and matching") {
    Mask m(3, 2);
    m.set(1, 1, 0, true);
    const Mask e = m.extruded(4);
    CHECK(e.depth == 4);
    CHECK(e.count() == 4);
    CHECK(e.at(1, 1, 3));
    CHECK(e.matches(Volume(3, 2, 4)));
    CHECK_FALSE(e.matches(Volume(3, 2, 5)));
}

TEST_CASE("Image and Volume reject inconsistent data") {
    CHECK_THROWS_AS(Image(2, 2, std::vector<double>(3)), ParameterError);
    CHECK_THROWS_AS(Volume(2, 2, 2, std::vector<double>(7)), ParameterError);
    CHECK_THROWS_AS(Image(0, 2), ParameterError);
    Volume v(2, 2, 2);
    v(1, 1, 1) = std::nan("");
    CHECK_FALSE(v.all_finite());
}

TEST_CASE("RdsParams validation") {
    RdsParams p;
    CHECK_NOTHROW(p.validate());
    p.lambda = 0.0;
    CHECK_THROWS_AS(p.validate(), ParameterError);
    p = RdsParams::from_anisotropy(2.0, 3.0);
    CHECK(p.metric_g.g22 == doctest::Approx(0.01));
    CHECK(p.metric_D.g22 == doctest::Approx(0.0025));
}
