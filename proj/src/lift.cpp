#include "orientrds/lift.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace orientrds {

namespace {

constexpr double kPi = std::numbers::pi;

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
    if (p == nullptr) throw Error("fftw_malloc failed");
    return FftwBuffer<T>(p);
}

struct PlanDeleter {
    void operator()(fftw_plan p) const noexcept { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

double radial_window(double rho, double inflection) noexcept {
    if (rho <= inflection) return 1.0;
    if (rho >= 1.0) return 0.0;
    const double t = (rho - inflection) / (1.0 - inflection);
    return 0.5 * (1.0 + std::cos(kPi * t));
}

}  // namespace

double cardinal_bspline(int order, double x) noexcept {
    // Truncated-power form of the centred B-spline of degree `order`.
    const int n = order;
    const double shift = 0.5 * (n + 1);
    double acc = 0.0;
    double binom = 1.0;
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int j = 0; j <= n + 1; ++j) {
        const double t = x + shift - j;
        if (t > 0.0) acc += ((j % 2) ? -1.0 : 1.0) * binom * std::pow(t, n);
        binom = binom * (n + 1 - j) / (j + 1);
    }
    return std::max(0.0, acc / fact);
}

double cake_spectrum(const WaveletStack& w, int k, double wx, double wy) noexcept {
    const int K = w.orientations;
    if (wx == 0.0 && wy == 0.0) return 1.0 / K;
    const double rho = std::hypot(wx, wy) / kPi;
    const double radial = radial_window(rho, w.inflection);
    if (radial == 0.0) return 0.0;
    const double step = 2.0 * kPi / K;
    // Distance from the wedge centre theta_k + pi/2 in wedge units, wrapped
    // to [-K/2, K/2).
    double u = (std::atan2(wy, wx) - k * step - 0.5 * kPi) / step;
    u = u - K * std::floor(u / K + 0.5);
    return radial * cardinal_bspline(w.angular_order, u);
}

WaveletStack build_cake_wavelets(int orientations, int size, int angular_order,
                                 double inflection) {
    if (orientations < 4) throw ParameterError("cake wavelets need at least 4 orientations");
    if (size < 9) throw ParameterError("wavelet support must be at least 9 pixels");
    if (size % 2 == 0) throw ParameterError("wavelet support must be odd");
    if (angular_order < 0 || angular_order + 1 > orientations) {
        throw ParameterError("angular order must lie in [0, K-1]");
    }
    if (!(inflection > 0.0 && inflection < 1.0)) {
        throw ParameterError("inflection must lie in (0, 1)");
    }

    WaveletStack w;
    w.orientations = orientations;
    w.size = size;
    w.angular_order = angular_order;
    w.inflection = inflection;
    w.kernels.assign(static_cast<std::size_t>(orientations), {});

    const int N = size;
    const int c = N / 2;
    // Symmetric frequency grid w_u = 2pi (u - c) / N and the matching
    // separable phase table e^{i w_u x}.
    std::vector<double> freq(static_cast<std::size_t>(N));
    for (int u = 0; u < N; ++u) freq[u] = 2.0 * kPi * (u - c) / N;
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(N) * N);
    for (int u = 0; u < N; ++u) {
        for (int x = -c; x <= c; ++x) {
            phase[static_cast<std::size_t>(u) * N + (x + c)] = std::polar(1.0, freq[u] * x);
        }
    }

    const bool quarter = orientations % 4 == 0;
    const int direct = quarter ? orientations / 4 : orientations;

#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < direct; ++k) {
        std::vector<double> spec(static_cast<std::size_t>(N) * N);
        for (int v = 0; v < N; ++v) {
            for (int u = 0; u < N; ++u) {
                spec[static_cast<std::size_t>(v) * N + u] = cake_spectrum(w, k, freq[u], freq[v]);
            }
        }
        // Inverse DFT, rows first: partial[v][x] = sum_u spec[v][u] e^{i w_u x}.
        std::vector<std::complex<double>> partial(static_cast<std::size_t>(N) * N);
        for (int v = 0; v < N; ++v) {
            for (int x = 0; x < N; ++x) {
                std::complex<double> acc = 0.0;
                for (int u = 0; u < N; ++u) {
                    acc += spec[static_cast<std::size_t>(v) * N + u] *
                           phase[static_cast<std::size_t>(u) * N + x];
                }
                partial[static_cast<std::size_t>(v) * N + x] = acc;
            }
        }
        auto& ker = w.kernels[static_cast<std::size_t>(k)];
        ker.assign(static_cast<std::size_t>(N) * N, 0.0);
        const double norm = 1.0 / (static_cast<double>(N) * N);
        for (int y = 0; y < N; ++y) {
            for (int x = 0; x < N; ++x) {
                std::complex<double> acc = 0.0;
                for (int v = 0; v < N; ++v) {
                    acc += partial[static_cast<std::size_t>(v) * N + x] *
                           phase[static_cast<std::size_t>(v) * N + y];
                }
                ker[static_cast<std::size_t>(y) * N + x] = acc * norm;
            }
        }
    }

    if (quarter) {
        // Quarter turns are exact on the square grid: psi_{k+K/4}(x, y) = psi_k(y, -x).
        const int q = orientations / 4;
        for (int k = q; k < orientations; ++k) {
            const auto& src = w.kernels[static_cast<std::size_t>(k - q)];
            auto& dst = w.kernels[static_cast<std::size_t>(k)];
            dst.assign(src.size(), 0.0);
            for (int y = -c; y <= c; ++y) {
                for (int x = -c; x <= c; ++x) {
                    dst[static_cast<std::size_t>(y + c) * N + (x + c)] =
                        src[static_cast<std::size_t>(-x + c) * N + (y + c)];
                }
            }
        }
    }
    return w;
}

Volume lift(const Image& f, const WaveletStack& w) {
    if (w.kernels.size() != static_cast<std::size_t>(w.orientations) || w.orientations < 1) {
        throw ParameterError("malformed wavelet stack");
    }
    if (f.empty()) throw ParameterError("cannot lift an empty image");
    if (f.width() < w.size || f.height() < w.size) {
        throw ParameterError("image is smaller than the wavelet support");
    }
    if (!f.all_finite()) throw ParameterError("image contains non-finite values");

    const int W = f.width();
    const int H = f.height();
    const int K = w.orientations;
    const int r = w.radius();
    const int n1 = next_pow2(W + 2 * r);
    const int n0 = next_pow2(H + 2 * r);
    const int nc = n1 / 2 + 1;
    const std::size_t real_n = static_cast<std::size_t>(n0) * n1;
    const std::size_t cplx_n = static_cast<std::size_t>(n0) * nc;

    auto signal = fftw_buffer<double>(real_n);
    auto kernel = fftw_buffer<double>(real_n);
    auto signal_hat = fftw_buffer<fftw_complex>(cplx_n);
    auto kernel_hat = fftw_buffer<fftw_complex>(cplx_n);

    Plan fwd_signal(fftw_plan_dft_r2c_2d(n0, n1, signal.get(), signal_hat.get(), FFTW_ESTIMATE));
    Plan fwd_kernel(fftw_plan_dft_r2c_2d(n0, n1, kernel.get(), kernel_hat.get(), FFTW_ESTIMATE));
    Plan inverse(fftw_plan_dft_c2r_2d(n0, n1, kernel_hat.get(), kernel.get(), FFTW_ESTIMATE));

    // Reflect-pad by the kernel radius, zero-fill the rest.
    std::fill(signal.get(), signal.get() + real_n, 0.0);
    for (int j = 0; j < H + 2 * r; ++j) {
        const int sy = reflect_spatial(j - r, H);
        for (int i = 0; i < W + 2 * r; ++i) {
            signal[static_cast<std::size_t>(j) * n1 + i] = f(reflect_spatial(i - r, W), sy);
        }
    }
    fftw_execute(fwd_signal.get());

    Volume out(W, H, K);
    const double scale = 1.0 / static_cast<double>(real_n);
    // Real parts of psi_k and psi_{k+K/2} coincide (point reflection), so
    // half of the slices are copies when K is even.
    const int distinct = K % 2 == 0 ? K / 2 : K;
    for (int k = 0; k < distinct; ++k) {
        std::fill(kernel.get(), kernel.get() + real_n, 0.0);
        for (int dy = -r; dy <= r; ++dy) {
            const int row = (dy + n0) % n0;
            for (int dx = -r; dx <= r; ++dx) {
                kernel[static_cast<std::size_t>(row) * n1 + (dx + n1) % n1] = w.at(k, dx, dy).real();
            }
        }
        fftw_execute(fwd_kernel.get());
        // Correlation: F * conj(H).
        for (std::size_t i = 0; i < cplx_n; ++i) {
            const double a = signal_hat[i][0];
            const double b = signal_hat[i][1];
            const double c = kernel_hat[i][0];
            const double d = kernel_hat[i][1];
            kernel_hat[i][0] = a * c + b * d;
            kernel_hat[i][1] = b * c - a * d;
        }
        fftw_execute(inverse.get());
        for (int y = 0; y < H; ++y) {
            const double* src = kernel.get() + static_cast<std::size_t>(y + r) * n1 + r;
            for (int x = 0; x < W; ++x) out(x, y, k) = src[x] * scale;
        }
        if (distinct != K) {
            const std::size_t plane = out.slice_size();
            const auto vals = out.values();
            std::copy_n(vals.begin() + static_cast<std::ptrdiff_t>(k * plane), plane,
                        vals.begin() + static_cast<std::ptrdiff_t>((k + K / 2) * plane));
        }
    }
    return out;
}

Image project(const Volume& v) {
    Image out(v.width(), v.height());
    const std::size_t plane = v.slice_size();
    for (int k = 0; k < v.orientations(); ++k) {
        const std::size_t base = static_cast<std::size_t>(k) * plane;
        for (std::size_t i = 0; i < plane; ++i) out[i] += v[base + i];
    }
    return out;
}

}  // namespace orientrds
