#pragma once

#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// Sampled, normalised Gaussian taps on [-r, r] with r = ceil(4 sigma).
/// sigma = 0 yields the single tap {1}.
std::vector<double> gaussian_kernel(double sigma);

/// Separable isotropic Gaussian blur with reflective boundaries.
Image gaussian_blur(const Image& f, double sigma);

/// Blur every orientation slice of a volume in place.
void gaussian_blur_slices(Volume& v, double sigma);

/// Periodic Gaussian along the orientation axis; sigma in orientation steps.
void gaussian_blur_orientations(Volume& v, double sigma_steps);

}  // namespace orientrds
