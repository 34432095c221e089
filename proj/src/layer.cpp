#include "orientrds/layer.hpp"

#include <cmath>

#include "orientrds/diffops.hpp"
#include "orientrds/rds.hpp"
#include "orientrds/stencil.hpp"

namespace orientrds {

void LayerParams::validate() const {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (!(T > 0.0)) throw ParameterError("T must be positive");
    if (!(alpha > 0.5 && alpha <= 1.0)) throw ParameterError("alpha must lie in (1/2, 1]");
}

Volume phi_dif(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T) {
    if (!(T >= 0.0)) throw ParameterError("T must be non-negative");
    if (T == 0.0) return u;
    const double tau_max = diffusion_timestep(m, kPixelStep, u.dtheta());
    const int n = static_cast<int>(std::ceil(T / tau_max - 1e-9));
    const double tau = T / n;
    const auto h = stencil::steps(u);
    std::array<double, 3> c{};
    for (int i = 0; i < 3; ++i) c[i] = tau * m.dual(i) / (h[i] * h[i]);
    Volume cur = u;
    Volume next(u.width(), u.height(), u.orientations());
    for (int step = 0; step < n; ++step) {
        stencil::for_each_arms(cur, frame, [&](std::size_t idx, int, int, int, const stencil::Arms& a) {
            double acc = a.center;
            for (int i = 0; i < 3; ++i) acc += c[i] * (a.plus[i] - 2.0 * a.center + a.minus[i]);
            next[idx] = acc;
        });
        std::swap(cur, next);
    }
    return cur;
}

Volume phi_dil(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T,
               double alpha) {
    if (!(T >= 0.0)) throw ParameterError("T must be non-negative");
    if (!(alpha > 0.5 && alpha <= 1.0)) throw ParameterError("alpha must lie in (1/2, 1]");
    const double range = u.max() - u.min();
    if (T == 0.0 || range == 0.0) return u;
    const auto h = stencil::steps(u);
    std::array<double, 3> c{};
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        c[i] = m.dual(i) / (h[i] * h[i]);
        sum += c[i];
    }
    const double tau_max = std::pow(sum, -alpha) * std::pow(range, 1.0 - 2.0 * alpha);
    const int n = static_cast<int>(std::ceil(T / tau_max - 1e-9));
    const double tau = T / n;
    Volume cur = u;
    Volume next(u.width(), u.height(), u.orientations());
    for (int step = 0; step < n; ++step) {
        stencil::for_each_arms(cur, frame, [&](std::size_t idx, int, int, int, const stencil::Arms& a) {
            double acc = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double d = detail::upwind_arm(a.plus[i], a.center, a.minus[i], UpwindMode::dilation);
                acc += c[i] * d * d;
            }
            next[idx] = a.center + tau * std::pow(acc, alpha);
        });
        std::swap(cur, next);
    }
    return cur;
}

Volume phi_ero(const Volume& u, const FrameField& frame, const DiagonalMetric& m, double T,
               double alpha) {
    Volume neg = u;
    for (double& v : neg.values()) v = -v;
    Volume out = phi_dil(neg, frame, m, T, alpha);
    for (double& v : out.values()) v = -v;
    return out;
}

LayerGates layer_gates(const Volume& u, const FrameField& frame, const LayerParams& p) {
    LayerGates gates;
    const Volume grad = gradient_norm_central(u, frame, p.metric_g);
    gates.g = phi_dif(grad, frame, p.metric_g, p.T);
    for (double& v : gates.g.values()) v = charbonnier(v * v, p.lambda);

    const Volume smooth = phi_dif(u, frame, p.metric_S, p.T);
    gates.s = p.perpendicular_gate ? perpendicular_laplacian(smooth, frame, p.metric_S)
                                   : laplacian(smooth, frame, p.metric_S);
    for (double& v : gates.s.values()) v = shock_sigmoid(v, p.eps);
    return gates;
}

Volume combine_gated(const Volume& u, const Volume& dif, const Volume& dil, const Volume& ero,
                     const Volume& g, const Volume& s) {
    for (const Volume* v : {&dif, &dil, &ero, &g, &s}) {
        if (!v->same_shape(u)) throw ParameterError("gated combination inputs differ in shape");
    }
    Volume out(u.width(), u.height(), u.orientations());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const GateWeights w = gate_weights(g[i], s[i]);
        double morph = 0.0;
        if (s[i] < 0.0) morph = dil[i];
        else if (s[i] > 0.0) morph = ero[i];
        out[i] = w.diffusion * dif[i] + w.morphology * morph + w.identity * u[i];
    }
    return out;
}

Volume gated_rds_apply(const Volume& u, const FrameField& frame, const LayerParams& p) {
    p.validate();
    if (!frame.matches(u)) throw ParameterError("frame field does not match volume grid");
    const LayerGates gates = layer_gates(u, frame, p);
    const Volume dif = phi_dif(u, frame, p.metric_D, p.T);
    const Volume dil = phi_dil(u, frame, p.metric_M, p.T, p.alpha);
    const Volume ero = phi_ero(u, frame, p.metric_M, p.T, p.alpha);
    return combine_gated(u, dif, dil, ero, gates.g, gates.s);
}

}  // namespace orientrds
