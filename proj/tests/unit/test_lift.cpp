#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "orientrds/fixtures.hpp"
#include "orientrds/lift.hpp"
#include "orientrds/metrics.hpp"
#include "support.hpp"

using namespace orientrds;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

// Discrete-time Fourier transform of one kernel at (wx, wy), evaluated
// directly from the spatial taps.
std::complex<double> kernel_dtft(const WaveletStack& w, int k, double wx, double wy) {
    std::complex<double> acc = 0.0;
    const int r = w.radius();
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            acc += w.at(k, dx, dy) * std::polar(1.0, -(wx * dx + wy * dy));
    return acc;
}

Image gaussian_blob(int n, double cx, double cy, double s) {
    return sample_image(n, n, [&](double x, double y) {
        return std::exp(-((x - cx) * (x - cx) + (y - cy) * (y - cy)) / (2.0 * s * s));
    });
}

}  // namespace

TEST_CASE("cardinal B-splines are normalised and partition unity") {
    for (int order = 0; order <= 4; ++order) {
        double integral = 0.0;
        const double h = 1e-3;
        for (double x = -3.0; x <= 3.0; x += h) integral += cardinal_bspline(order, x) * h;
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
        for (double x : {0.0, 0.13, 0.5, 0.77}) {
            double sum = 0.0;
            for (int j = -5; j <= 5; ++j) sum += cardinal_bspline(order, x - j);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    CHECK(cardinal_bspline(3, 0.0) == doctest::Approx(2.0 / 3.0));
    CHECK(cardinal_bspline(3, 1.0) == doctest::Approx(1.0 / 6.0));
    CHECK(cardinal_bspline(3, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("build_cake_wavelets produces K kernels of the requested support") {
    const WaveletStack w = build_cake_wavelets(32, 31, 3, 0.8);
    CHECK(w.orientations == 32);
    CHECK(w.size == 31);
    CHECK(w.radius() == 15);
    REQUIRE(w.kernels.size() == 32);
    for (const auto& k : w.kernels) CHECK(k.size() == 31u * 31u);
}

TEST_CASE("cake wavelets split the pass band into a partition of unity") {
    const WaveletStack w = build_cake_wavelets(32, 31, 3, 0.8);
    // Mid-band ring, several angles; the oracle is the DTFT of the taps, not
    // the analytic spectrum the kernels were built from.
    for (double angle : {0.0, 0.3, 1.1, 2.0, 4.4}) {
        const double rho = 0.45 * kPi;
        const double wx = rho * std::cos(angle), wy = rho * std::sin(angle);
        std::complex<double> sum = 0.0;
        double analytic = 0.0;
        for (int k = 0; k < 32; ++k) {
            sum += kernel_dtft(w, k, wx, wy);
            analytic += cake_spectrum(w, k, wx, wy);
        }
        CHECK(analytic == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(sum - 1.0) < 0.05);
    }
}

TEST_CASE("each cake wavelet peaks in its own frequency wedge") {
    const WaveletStack w = build_cake_wavelets(16, 31, 3, 0.8);
    const double rho = 0.4 * kPi;
    for (int k = 0; k < 16; ++k) {
        const double phi = k * 2.0 * kPi / 16 + kPi / 2;
        int best = -1;
        double best_mag = -1.0;
        for (int j = 0; j < 16; ++j) {
            const double mag = std::abs(kernel_dtft(w, j, rho * std::cos(phi), rho * std::sin(phi)));
            if (mag > best_mag) {
                best_mag = mag;
                best = j;
            }
        }
        CHECK(best == k);
    }
}

TEST_CASE("with 4 orientations kernel 1 is the exact quarter turn of kernel 0") {
    const WaveletStack w = build_cake_wavelets(4, 31, 3, 0.8);
    const int r = w.radius();
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) CHECK(w.at(1, dx, dy) == w.at(0, dy, -dx));
}

TEST_CASE("build_cake_wavelets validates its arguments") {
    CHECK_THROWS_AS(build_cake_wavelets(3, 31), ParameterError);
    CHECK_THROWS_AS(build_cake_wavelets(8, 30), ParameterError);
    CHECK_THROWS_AS(build_cake_wavelets(8, 7), ParameterError);
    CHECK_THROWS_AS(build_cake_wavelets(8, 31, 8), ParameterError);
    CHECK_THROWS_AS(build_cake_wavelets(8, 31, 3, 1.0), ParameterError);
    CHECK_THROWS_AS(build_cake_wavelets(8, 31, 3, 0.0), ParameterError);
}

TEST_CASE("lifting a delta samples the conjugated wavelet") {
    const WaveletStack w = build_cake_wavelets(8, 15, 3, 0.8);
    Image f(40, 40);
    const int x0 = 20, y0 = 19;
    f(x0, y0) = 1.0;
    const Volume v = lift(f, w);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k)
        for (int y = y0 - 7; y <= y0 + 7; ++y)
            for (int x = x0 - 7; x <= x0 + 7; ++x) {
                const double expect = std::conj(w.at(k, x0 - x, y0 - y)).real();
                worst = std::max(worst, std::abs(v(x, y, k) - expect));
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("a straight line is lifted most strongly at the nearest orientation") {
    const WaveletStack w = build_cake_wavelets(16, 21, 3, 0.8);
    for (double alpha : {0.0, 0.4, 1.2, 2.3}) {
        const Image f = draw_lines(48, 48, {Line{23.5, 23.5, alpha}}, 1.0);
        const Volume v = lift(f, w);
        double best_energy = -1.0;
        int best = -1;
        for (int k = 0; k < 16; ++k) {
            double e = 0.0;
            for (int y = 12; y < 36; ++y)
                for (int x = 12; x < 36; ++x) {
                    if (Line{23.5, 23.5, alpha}.distance(x, y) <= 0.5) e += v(x, y, k) * v(x, y, k);
                }
            if (e > best_energy) {
                best_energy = e;
                best = k;
            }
        }
        // Brute force over k of the angular distance modulo pi.
        int nearest = -1;
        double nearest_d = 1e9;
        for (int k = 0; k < 16; ++k) {
            double d = std::fmod(std::abs(k * 2.0 * kPi / 16 - alpha), kPi);
            d = std::min(d, kPi - d);
            if (d < nearest_d - 1e-12) {
                nearest_d = d;
                nearest = k;
            }
        }
        CHECK(best % 8 == nearest % 8);
    }
}

TEST_CASE("a constant image lifts to c/K in every slice") {
    const WaveletStack w = build_cake_wavelets(16, 21, 3, 0.8);
    const Image f(32, 32, 0.7);
    const Volume v = lift(f, w);
    for (double x : v.values()) CHECK(x == doctest::Approx(0.7 / 16).epsilon(1e-9));
}

TEST_CASE("lift is exactly equivariant under integer shifts") {
    const WaveletStack w = build_cake_wavelets(8, 15, 3, 0.8);
    // Compact support well inside the frame, so the reflective pad stays zero.
    const Image f = gaussian_blob(48, 20.0, 22.0, 2.0);
    const Volume shifted = lift(translate(f, 3, -2), w);
    const Volume expect = translate(lift(f, w), 3, -2);
    CHECK(max_abs_diff(shifted.values(), expect.values()) < 1e-8);
}

TEST_CASE("lift commutes with the quarter turn") {
    const WaveletStack w = build_cake_wavelets(8, 15, 3, 0.8);
    const Image f = random_image(32, 32, 21);
    const Volume a = lift(rotate90(f), w);
    const Volume b = rotate90(lift(f, w));
    CHECK(relative_l2(a.values(), b.values()) < 1e-4);
}

TEST_CASE("project sums orientations") {
    const Volume c(6, 5, 8, 0.25);
    const Image p = project(c);
    for (double x : p.values()) CHECK(x == doctest::Approx(2.0));

    Volume one(6, 5, 8);
    const Image r = random_image(6, 5, 4);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 6; ++x) one(x, y, 3) = r(x, y);
    CHECK(max_abs_diff(project(one).values(), r.values()) == 0.0);
}

TEST_CASE("project after lift reconstructs band-limited images") {
    const WaveletStack w = build_cake_wavelets(32, 31, 3, 0.8);
    const Image f = gaussian_blob(64, 30.0, 33.0, 4.0);
    const Image g = project(lift(f, w));
    // Affine rescaling by least squares before comparing.
    double sf = 0, sg = 0, sff = 0, sfg = 0;
    const double n = static_cast<double>(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        sf += f[i];
        sg += g[i];
        sff += f[i] * f[i];
        sfg += f[i] * g[i];
    }
    const double a = (n * sfg - sf * sg) / (n * sff - sf * sf);
    const double b = (sg - a * sf) / n;
    Image fit(64, 64);
    for (std::size_t i = 0; i < f.size(); ++i) fit[i] = (g[i] - b) / a;
    CHECK(psnr(fit, f) >= 40.0);
    CHECK(a == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("lift rejects images smaller than the wavelet support") {
    const WaveletStack w = build_cake_wavelets(8, 31, 3, 0.8);
    CHECK_THROWS_AS(lift(Image(20, 20), w), ParameterError);
}
