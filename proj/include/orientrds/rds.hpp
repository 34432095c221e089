#pragma once

#include <functional>
#include <optional>

#include "orientrds/core.hpp"
#include "orientrds/lift.hpp"

namespace orientrds {

/// Charbonnier diffusivity 1 / sqrt(1 + s2 / lambda^2).
inline double charbonnier(double s2, double lambda) noexcept {
    return 1.0 / std::sqrt(1.0 + s2 / (lambda * lambda));
}

/// Soft sign x / sqrt(x^2 + eps^2).
inline double shock_sigmoid(double x, double eps) noexcept {
    return x / std::sqrt(x * x + eps * eps);
}

/// Explicit Euler bound for the diffusion term alone, from dual components
/// (a zero dual weight switches that direction off).
double diffusion_timestep(double d11, double d22, double d33, double dxy, double dtheta);
double diffusion_timestep(const DiagonalMetric& d, double dxy, double dtheta);

/// Explicit bound for the upwind morphological term. The angular weight is
/// taken from the shock-switch metric; the two coincide under the default
/// parameterisation.
double shock_timestep(double m11, double m22, double s33, double dxy, double dtheta);
double shock_timestep(const DiagonalMetric& m, const DiagonalMetric& s, double dxy, double dtheta);

/// min(diffusion_timestep, shock_timestep).
double stable_timestep(const RdsParams& p, double dxy, double dtheta);

/// Overload on a grid's native steps.
double stable_timestep(const RdsParams& p, const Volume& grid);

struct Guidance {
    Volume g_switch;  // in (0, 1]
    Volume s_switch;  // in [-1, 1]
};

Guidance compute_guidance(const Volume& u, const FrameField& frame, const RdsParams& p);

struct RdsState {
    Volume u;
    Volume u0;
    std::optional<Mask> mask;  // set = evolved; depth equals K
    FrameField frame;
    Volume g_switch;
    Volume s_switch;
    int step_count = 0;
    double tau = 0.0;
    // Range of the initial data, for the instability detector.
    double initial_min = 0.0;
    double initial_max = 0.0;
};

/// Initial state with the invariant or fitted gauge frame, guidance fields
/// and the stable time step. An image-shaped mask is extruded over the
/// orientations.
RdsState make_rds_state(const Volume& u0, const RdsParams& p, std::optional<Mask> mask = {});

/// One explicit step of length state.tau. Guidance is refreshed every
/// p.guidance_refresh steps and, with p.use_gauge, the frame every
/// p.frame_refresh steps (both before the update). Throws InstabilityError if
/// the state leaves the initial range by more than 1e-6 of that range.
void rds_step(RdsState& state, const RdsParams& p);

/// Called after every step with the elapsed time and the current state.
using RdsCheckpoint = std::function<void(double t, const RdsState& state)>;

struct RdsResult {
    Volume volume;
    Image image;  // projection of volume
    int steps = 0;
    double tau = 0.0;
    std::size_t frame_fallbacks = 0;
};

/// Evolves already-lifted data for time T.
RdsResult run_rds(const Volume& u0, const RdsParams& p, double T,
                  std::optional<Mask> mask = {}, const RdsCheckpoint& checkpoint = {});

/// Lifts f with the given wavelets first.
RdsResult run_rds(const Image& f, const WaveletStack& w, const RdsParams& p, double T,
                  std::optional<Mask> mask = {}, const RdsCheckpoint& checkpoint = {});

}  // namespace orientrds
