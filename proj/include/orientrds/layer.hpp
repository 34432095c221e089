#pragma once

#include "orientrds/core.hpp"

namespace orientrds {

struct LayerParams {
    DiagonalMetric metric_D = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_M = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_g = DiagonalMetric::from_anisotropy(0.1, 1.0);
    DiagonalMetric metric_S = DiagonalMetric::from_anisotropy(0.1, 1.0);
    double lambda = 1.0;
    double eps = 1e-2;
    double T = 1.0;
    double alpha = 0.65;
    /// Use the perpendicular Laplacian in the shock gate instead of the full one.
    bool perpendicular_gate = false;

    void validate() const;
};

/// Diffusion for time T: ceil(T / tau_D) uniform explicit steps.
Volume phi_dif(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T);

/// Dilation dU/dt = |grad U|^(2 alpha) for time T with upwind differences.
/// Step length C^-alpha R^(1 - 2 alpha), with C the summed dual weights per
/// squared step and R the initial range, keeps every step inside the range.
Volume phi_dil(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T,
               double alpha);

/// -phi_dil(-u).
Volume phi_ero(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T,
               double alpha);

struct GateWeights {
    double diffusion;
    double morphology;
    double identity;  // 1 - (diffusion + morphology)
};

/// Per-voxel convex weights of the gated combination. Summed as
/// (diffusion + morphology) + identity they give exactly 1.
inline GateWeights gate_weights(double g, double s) noexcept {
    const double a = g;
    const double b = (1.0 - g) * (s < 0.0 ? -s : s);
    return {a, b, 1.0 - (a + b)};
}

struct LayerGates {
    Volume g;  // diffusion gate in (0, 1]
    Volume s;  // shock gate in [-1, 1]
};

LayerGates layer_gates(const Volume& u, const FrameField& frame, const LayerParams& p);

/// g * dif + (1-g)|s| (dil [s<0] + ero [s>0]) + (1-g)(1-|s|) u.
Volume combine_gated(const Volume& u, const Volume& dif, const Volume& dil, const Volume& ero,
                     const Volume& g, const Volume& s);

Volume gated_rds_apply(const Volume& u, const FrameField& frame, const LayerParams& p);

}  // namespace orientrds
