#pragma once

#include <array>
#include <optional>
#include <vector>

#include "orientrds/core.hpp"

namespace orientrds {

/// Symmetric 2x2 tensor per pixel, stored as (j11, j12, j22).
struct StructureTensorField {
    int width = 0;
    int height = 0;
    double sigma = 0.0;
    double rho = 0.0;
    std::vector<std::array<double, 3>> tensors;

    const std::array<double, 3>& at(int x, int y) const noexcept {
        return tensors[static_cast<std::size_t>(y) * width + x];
    }
};

/// Gaussian pre-smoothing at sigma, central-difference gradient, outer
/// product, componentwise Gaussian at rho. Reflective boundaries.
StructureTensorField structure_tensor(const Image& f, double sigma, double rho);

using Direction2 = std::array<double, 2>;

/// Unit eigenvector of the larger eigenvalue per pixel, sign fixed so that
/// x > 0, or x == 0 and y >= 0. Pixels whose eigenvalue gap is below
/// `tol` (absolute) get (1, 0).
std::vector<Direction2> dominant_direction(const StructureTensorField& j, double tol = 1e-12);

/// Closed-form version for a single tensor.
Direction2 dominant_direction(const std::array<double, 3>& j, double tol = 1e-12) noexcept;

struct Rds2dParams {
    double lambda = 1.0;
    double sigma = 1.0;  // inner scale of the shock direction and of u_sigma
    double rho = 1.0;    // outer structure tensor scale
    double nu = 1.0;     // switch regularisation
    double eps = 1e-2;   // sigmoid sharpness
    double tau = 0.25;

    void validate() const;
};

/// Largest stable step: min(dxy^2 / 4, dxy / sqrt(2)).
double stable_timestep_2d(double dxy = kPixelStep);

/// One explicit step of the planar diffusion-shock filter. `mask` set cells
/// evolve; cleared cells keep the value from `u0` (pass u0 = u without a mask).
/// Throws InstabilityError when the result leaves [lo, hi] by more than
/// 1e-6 of that range.
Image rds2d_step(const Image& u, const Rds2dParams& p, const Image* u0 = nullptr,
                 const Mask* mask = nullptr);

/// ceil(T / tau) steps with tau = min(p.tau, stable, remaining).
Image run_rds2d(const Image& f, const Rds2dParams& p, double T, const std::optional<Mask>& mask = {});

}  // namespace orientrds
