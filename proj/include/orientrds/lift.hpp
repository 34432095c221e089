#pragma once

#include <complex>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// K rotated cake wavelets on a square odd-sized support.
///
/// The wavelets are built in the Fourier domain: orientation k owns the wedge
/// of frequency angles centred on theta_k + pi/2 (the frequency direction of a
/// line running along theta_k), shaped by a cardinal B-spline in the angle, so
/// the K wedges partition unity. A radial window equal to one up to
/// `inflection` times Nyquist rolls off smoothly to zero at Nyquist. The DC bin
/// is shared equally (1/K per orientation).
struct WaveletStack {
    int orientations = 0;
    int size = 0;
    int angular_order = 3;
    double inflection = 0.8;
    /// size*size complex taps per orientation, row-major with the origin at
    /// (radius, radius).
    std::vector<std::vector<std::complex<double>>> kernels;

    int radius() const noexcept { return size / 2; }
    std::complex<double> at(int k, int dx, int dy) const noexcept {
        return kernels[static_cast<std::size_t>(k)]
                      [static_cast<std::size_t>(dy + radius()) * size + (dx + radius())];
    }
};

/// Centred cardinal B-spline of the given order (support (order+1)/2 each side).
double cardinal_bspline(int order, double x) noexcept;

/// Fourier-domain profile of orientation k at angular frequency (wx, wy),
/// each in [-pi, pi].
double cake_spectrum(const WaveletStack& w, int k, double wx, double wy) noexcept;

WaveletStack build_cake_wavelets(int orientations, int size, int angular_order = 3,
                                 double inflection = 0.8);

/// Orientation score: real part of the cross-correlation of f with each
/// conjugated, rotated wavelet. Reflective boundary extension.
Volume lift(const Image& f, const WaveletStack& w);

/// Sum over orientations.
Image project(const Volume& v);

}  // namespace orientrds
