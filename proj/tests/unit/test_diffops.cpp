#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orientrds/diffops.hpp"
#include "orientrds/filters.hpp"
#include "support.hpp"

using namespace orientrds;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

// Applies `check` to every voxel at least `margin` pixels from the border.
template <class F>
void for_interior(const Volume& v, int margin, F&& check) {
    for (int k = 0; k < v.orientations(); ++k)
        for (int y = margin; y < v.height() - margin; ++y)
            for (int x = margin; x < v.width() - margin; ++x) check(x, y, k);
}

double max_interior_error(const Volume& v, int margin, double expect, int only_k = -1) {
    double worst = 0.0;
    for_interior(v, margin, [&](int x, int y, int k) {
        if (only_k >= 0 && k != only_k) return;
        worst = std::max(worst, std::abs(v(x, y, k) - expect));
    });
    return worst;
}

Volume smooth_random_volume(int n, int K, std::uint64_t seed) {
    Volume v = random_volume(n, n, K, seed);
    gaussian_blur_slices(v, 1.5);
    gaussian_blur_orientations(v, 1.0);
    return v;
}

}  // namespace

TEST_CASE("invariant frame at theta = 0 and theta = pi/2") {
    const FrameField f = FrameField::invariant(4, 4, 8);
    const Vec3 b1 = f.vector(FrameAxis::forward, 1, 1, 0);
    const Vec3 b2 = f.vector(FrameAxis::lateral, 1, 1, 0);
    const Vec3 b3 = f.vector(FrameAxis::angular, 1, 1, 0);
    CHECK(b1 == Vec3{1.0, 0.0, 0.0});
    CHECK(b2 == Vec3{0.0, 1.0, 0.0});
    CHECK(b3 == Vec3{0.0, 0.0, 1.0});

    const Vec3 c1 = f.vector(FrameAxis::forward, 2, 3, 2);
    const Vec3 c2 = f.vector(FrameAxis::lateral, 2, 3, 2);
    CHECK(c1[0] == doctest::Approx(0.0));
    CHECK(c1[1] == doctest::Approx(1.0));
    CHECK(c2[0] == doctest::Approx(-1.0));
    CHECK(c2[1] == doctest::Approx(0.0));
}

TEST_CASE("invariant frame is G_xi-orthonormal and right-handed at every orientation") {
    const FrameField f = FrameField::invariant(3, 3, 32, 0.1);
    for (int k = 0; k < 32; ++k) {
        constexpr FrameAxis axes[3] = {FrameAxis::forward, FrameAxis::lateral, FrameAxis::angular};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(f.metric_inner(axes[i], axes[j], 1, 1, k) ==
                      doctest::Approx(i == j ? 1.0 : 0.0));
        const Vec3 a = f.vector(FrameAxis::forward, 1, 1, k);
        const Vec3 b = f.vector(FrameAxis::lateral, 1, 1, k);
        const Vec3 c = f.vector(FrameAxis::angular, 1, 1, k);
        const double triple = c[0] * (a[1] * b[2] - a[2] * b[1]) +
                              c[1] * (a[2] * b[0] - a[0] * b[2]) +
                              c[2] * (a[0] * b[1] - a[1] * b[0]);
        CHECK(triple > 0.0);
    }
}

TEST_CASE("first derivatives of coordinate fields") {
    const int K = 16;
    const Volume vx = sample_volume(20, 20, K, [](double x, double, double) { return x; });
    const FrameField f = invariant_frame(vx);
    const Volume d = derivative_first(vx, f, FrameAxis::forward);
    double worst = 0.0;
    for_interior(d, 2, [&](int x, int y, int k) {
        worst = std::max(worst, std::abs(d(x, y, k) - std::cos(vx.theta(k))));
    });
    CHECK(worst < 1e-12);

    const Volume vt = sample_volume(8, 8, K, [](double, double, double t) { return t; });
    const Volume dt = derivative_first(vt, invariant_frame(vt), FrameAxis::angular);
    for (int k = 1; k < K - 1; ++k) CHECK(dt(4, 4, k) == doctest::Approx(1.0).epsilon(1e-12));

    const Volume c(10, 10, K, 3.0);
    const FrameField fc = invariant_frame(c);
    for (FrameAxis a : {FrameAxis::forward, FrameAxis::lateral, FrameAxis::angular}) {
        const Volume z = derivative_first(c, fc, a);
        for (double x : z.values()) CHECK(x == 0.0);
    }
}

TEST_CASE("second derivatives: quadratic, linear and constant fields") {
    const int K = 16;
    const Volume q = sample_volume(20, 20, K, [](double x, double y, double) {
        return x * x + y * y;
    });
    const FrameField f = invariant_frame(q);
    // Quadratics are reproduced exactly where the arms land on grid nodes.
    for (int k : {0, 4, 8, 12}) {
        CHECK(max_interior_error(derivative_second(q, f, FrameAxis::forward), 2, 2.0, k) < 1e-9);
        CHECK(max_interior_error(derivative_second(q, f, FrameAxis::lateral), 2, 2.0, k) < 1e-9);
    }
    const Volume lin = sample_volume(20, 20, K, [](double x, double y, double) {
        return 3.0 * x - 2.0 * y;
    });
    CHECK(max_interior_error(derivative_second(lin, f, FrameAxis::forward), 2, 0.0) < 1e-9);
    CHECK(max_interior_error(derivative_second(lin, f, FrameAxis::lateral), 2, 0.0) < 1e-9);
    const Volume c(20, 20, K, -1.5);
    {
        const Volume z = derivative_second(c, f, FrameAxis::forward);
        for (double x : z.values()) CHECK(x == 0.0);
    }
}

TEST_CASE("Laplacian and perpendicular Laplacian of x^2 + y^2") {
    const int K = 8;
    const Volume q = sample_volume(20, 20, K, [](double x, double y, double) {
        return x * x + y * y;
    });
    const FrameField f = invariant_frame(q);
    const DiagonalMetric unit = DiagonalMetric::from_dual(1.0, 1.0, 1.0);
    const Volume lap = laplacian(q, f, unit);
    const Volume perp = perpendicular_laplacian(q, f, unit);
    for (int k : {0, 2, 4, 6}) {
        CHECK(max_interior_error(lap, 2, 4.0, k) < 1e-9);
        CHECK(max_interior_error(perp, 2, 2.0, k) < 1e-9);
    }
    const Volume c(20, 20, K, 0.4);
    {
        const Volume z = laplacian(c, f, unit);
        for (double x : z.values()) CHECK(x == 0.0);
    }
    {
        const Volume z = perpendicular_laplacian(c, f, unit);
        for (double x : z.values()) CHECK(x == 0.0);
    }
}

TEST_CASE("perpendicular Laplacian vanishes on data varying only along the forward axis") {
    const int K = 8;
    const Volume v = sample_volume(20, 20, K, [](double x, double, double) { return x * x; });
    const FrameField f = invariant_frame(v);
    const Volume perp = perpendicular_laplacian(v, f, DiagonalMetric::from_anisotropy(0.1, 1.0));
    CHECK(max_interior_error(perp, 2, 0.0, 0) < 1e-9);
    CHECK(max_interior_error(perp, 2, 0.0, K / 2) < 1e-9);
}

TEST_CASE("central gradient norm") {
    const int K = 16;
    const Volume vx = sample_volume(16, 16, K, [](double x, double, double) { return x; });
    const FrameField f = invariant_frame(vx);
    const DiagonalMetric unit = DiagonalMetric::from_dual(1.0, 1.0, 1.0);
    CHECK(max_interior_error(gradient_norm_central(vx, f, unit), 2, 1.0) < 1e-12);

    const Volume c(16, 16, K, 2.0);
    {
        const Volume z = gradient_norm_central(c, f, unit);
        for (double x : z.values()) CHECK(x == 0.0);
    }

    const Volume r = random_volume(16, 16, K, 5);
    Volume r3 = r;
    for (double& x : r3.values()) x *= 3.0;
    const Volume g1 = gradient_norm_central(r, f, unit);
    const Volume g3 = gradient_norm_central(r3, f, unit);
    for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g3[i] == doctest::Approx(3.0 * g1[i]));
}

TEST_CASE("upwind gradient norm on ramps and constants") {
    const int K = 16;
    const Volume vx = sample_volume(16, 16, K, [](double x, double, double) { return x; });
    const FrameField f = invariant_frame(vx);
    const DiagonalMetric unit = DiagonalMetric::from_dual(1.0, 1.0, 1.0);
    for (UpwindMode m : {UpwindMode::dilation, UpwindMode::erosion}) {
        CHECK(max_interior_error(gradient_norm_upwind(vx, f, unit, m), 2, 1.0) < 1e-12);
        const Volume c(16, 16, K, 2.0);
        {
            const Volume z = gradient_norm_upwind(c, f, unit, m);
            for (double x : z.values()) CHECK(x == 0.0);
        }
    }
}

TEST_CASE("upwind arms around a spike are bounded by its height") {
    Volume v(5, 5, 5);
    const double h = 2.5;
    v(2, 2, 2) = h;
    for (int k = 0; k < 5; ++k)
        for (int y = 0; y < 5; ++y)
            for (int x = 0; x < 5; ++x) {
                if (x == 2 && y == 2 && k == 2) continue;
                for (const Vec3 dir : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{0.6, 0.8, 0},
                                       Vec3{-0.8, 0.6, 0}}) {
                    const double d =
                        evaluate_stencil(v, x, y, k, {dir, StencilScheme::upwind_forward});
                    CHECK(d >= 0.0);
                    CHECK(d <= h);
                }
            }
}

TEST_CASE("dilation update is monotone in neighbour values") {
    // u + tau |grad u| must not decrease anywhere when one voxel is raised.
    const int K = 8;
    const Volume base = random_volume(10, 10, K, 17);
    const FrameField f = invariant_frame(base);
    const DiagonalMetric m = DiagonalMetric::from_anisotropy(0.1, 0.5);
    const double c = m.dual(0) + m.dual(1) + m.dual(2) / (base.dtheta() * base.dtheta());
    const double tau = 1.0 / std::sqrt(c);
    std::mt19937_64 rng(3);
    for (UpwindMode mode : {UpwindMode::dilation, UpwindMode::erosion}) {
        const double sign = mode == UpwindMode::dilation ? 1.0 : -1.0;
        const Volume g0 = gradient_norm_upwind(base, f, m, mode);
        for (int trial = 0; trial < 10; ++trial) {
            Volume bumped = base;
            const std::size_t i = rng() % bumped.size();
            bumped[i] += 0.3;
            const Volume g1 = gradient_norm_upwind(bumped, f, m, mode);
            for (std::size_t j = 0; j < base.size(); ++j) {
                if (j == i) continue;
                CHECK(bumped[j] + sign * tau * g1[j] >= base[j] + sign * tau * g0[j] - 1e-12);
            }
        }
    }
}

TEST_CASE("gaussian_regularize: identity, impulse response and mass") {
    const Volume r = random_volume(12, 12, 8, 9);
    CHECK(max_abs_diff(gaussian_regularize(r, 0.0, 0.0).values(), r.values()) == 0.0);

    Volume imp(41, 41, 16);
    imp(20, 20, 5) = 1.0;
    const double ss = 2.0, sa = 0.5;
    const Volume g = gaussian_regularize(imp, ss, sa);
    const auto ks = gaussian_kernel(ss);
    const auto ka = gaussian_kernel(sa / imp.dtheta());
    const int rs = static_cast<int>(ks.size() / 2), ra = static_cast<int>(ka.size() / 2);
    double worst = 0.0;
    for (int k = 0; k < 16; ++k)
        for (int y = 0; y < 41; ++y)
            for (int x = 0; x < 41; ++x) {
                const int dx = x - 20, dy = y - 20;
                int dk = k - 5;
                if (dk > 8) dk -= 16;
                if (dk < -8) dk += 16;
                double expect = 0.0;
                if (std::abs(dx) <= rs && std::abs(dy) <= rs && std::abs(dk) <= ra)
                    expect = ks[dx + rs] * ks[dy + rs] * ka[dk + ra];
                worst = std::max(worst, std::abs(g(x, y, k) - expect));
            }
    CHECK(worst < 1e-12);

    double before = 0.0, after = 0.0;
    for (double x : imp.values()) before += x;
    for (double x : g.values()) after += x;
    CHECK(std::abs(after - before) <= 1e-6 * before);
}

TEST_CASE("operators commute with translation and the quarter turn") {
    const int K = 8;
    const Volume v = smooth_random_volume(24, K, 31);
    const FrameField f = invariant_frame(v);
    const DiagonalMetric m = DiagonalMetric::from_anisotropy(0.1, 0.5);

    auto check_rot = [&](auto op) {
        const Volume a = op(rotate90(v));
        const Volume b = rotate90(op(v));
        CHECK(relative_l2(a.values(), b.values()) < 1e-4);
    };
    check_rot([&](const Volume& u) { return laplacian(u, f, m); });
    check_rot([&](const Volume& u) { return perpendicular_laplacian(u, f, m); });
    check_rot([&](const Volume& u) { return gradient_norm_central(u, f, m); });
    check_rot([&](const Volume& u) { return gradient_norm_upwind(u, f, m, UpwindMode::dilation); });
    check_rot([&](const Volume& u) { return gradient_norm_upwind(u, f, m, UpwindMode::erosion); });
    check_rot([&](const Volume& u) { return gaussian_regularize(u, 1.0, 0.3); });

    // Translation: compare away from the reflected border.
    const Volume lt = laplacian(translate(v, 2, -1), f, m);
    const Volume tl = translate(laplacian(v, f, m), 2, -1);
    double worst = 0.0;
    for_interior(v, 4, [&](int x, int y, int k) {
        worst = std::max(worst, std::abs(lt(x, y, k) - tl(x, y, k)));
    });
    CHECK(worst < 1e-12);
}

TEST_CASE("second differences converge at second order") {
    // Spatial: q(s) = (h s)^4 sampled at spacing h, on grid-aligned slices.
    auto spatial_error = [](double h, FrameAxis axis, int k) {
        const Volume v = sample_volume(24, 24, 8, [h](double x, double y, double) {
            const double a = h * (x - 12.0), b = h * (y - 12.0);
            return a * a * a * a + 0.5 * b * b * b * b + a * a * b * b;
        });
        const Volume d = derivative_second(v, invariant_frame(v), axis);
        // At the node (12, 12) the analytic second derivatives of the scaled
        // field are 0; away from it use (x, y) = (14, 13).
        const double a = h * 2.0, b = h * 1.0;
        const double dxx = 12.0 * a * a + 2.0 * b * b;
        const double dyy = 6.0 * b * b + 2.0 * a * a;
        const bool along_x = (axis == FrameAxis::forward) == (k == 0);
        const double exact = (along_x ? dxx : dyy) * h * h;
        return std::abs(d(14, 13, k) - exact) / (h * h);
    };
    for (FrameAxis axis : {FrameAxis::forward, FrameAxis::lateral}) {
        for (int k : {0, 2}) {
            const double e1 = spatial_error(0.2, axis, k);
            const double e2 = spatial_error(0.1, axis, k);
            CHECK(e1 / e2 >= 3.5);
            CHECK(e1 / e2 <= 4.5);
        }
    }
    // Angular: sin(2 theta) at K and 2K orientations.
    auto angular_error = [](int K) {
        const Volume v = sample_volume(4, 4, K, [](double, double, double t) {
            return std::sin(2.0 * t) + 0.3 * std::cos(3.0 * t);
        });
        const Volume d = derivative_second(v, invariant_frame(v), FrameAxis::angular);
        double worst = 0.0;
        for (int k = 0; k < K; ++k) {
            const double t = v.theta(k);
            const double exact = -4.0 * std::sin(2.0 * t) - 2.7 * std::cos(3.0 * t);
            worst = std::max(worst, std::abs(d(1, 1, k) - exact));
        }
        return worst;
    };
    const double q = angular_error(32) / angular_error(64);
    CHECK(q >= 3.5);
    CHECK(q <= 4.5);
}
