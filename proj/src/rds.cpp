#include "orientrds/rds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orientrds/diffops.hpp"
#include "orientrds/gauge.hpp"
#include "orientrds/stencil.hpp"

namespace orientrds {

double diffusion_timestep(double d11, double d22, double d33, double dxy, double dtheta) {
    const double c = (d11 + d22) / (dxy * dxy) + d33 / (dtheta * dtheta);
    if (!(c > 0.0)) throw ParameterError("at least one dual weight must be positive");
    return 1.0 / (2.0 * c);
}

double diffusion_timestep(const DiagonalMetric& d, double dxy, double dtheta) {
    return diffusion_timestep(d.dual(0), d.dual(1), d.dual(2), dxy, dtheta);
}

double shock_timestep(double m11, double m22, double s33, double dxy, double dtheta) {
    const double c = (m11 + m22) / (dxy * dxy) + s33 / (dtheta * dtheta);
    if (!(c > 0.0)) throw ParameterError("at least one dual weight must be positive");
    return 1.0 / std::sqrt(c);
}

double shock_timestep(const DiagonalMetric& m, const DiagonalMetric& s, double dxy, double dtheta) {
    return shock_timestep(m.dual(0), m.dual(1), s.dual(2), dxy, dtheta);
}

double stable_timestep(const RdsParams& p, double dxy, double dtheta) {
    if (!(dxy > 0.0) || !(dtheta > 0.0)) throw ParameterError("grid steps must be positive");
    return std::min(diffusion_timestep(p.metric_D, dxy, dtheta),
                    shock_timestep(p.metric_M, p.metric_S, dxy, dtheta));
}

double stable_timestep(const RdsParams& p, const Volume& grid) {
    return stable_timestep(p, kPixelStep, grid.dtheta());
}

Guidance compute_guidance(const Volume& u, const FrameField& frame, const RdsParams& p) {
    if (!frame.matches(u)) throw ParameterError("frame field does not match volume grid");
    Guidance out;

    const Volume u_nu = gaussian_regularize(u, p.nu);
    out.g_switch = gradient_norm_central(u_nu, frame, p.metric_g);
    for (double& v : out.g_switch.values()) v = charbonnier(v * v, p.lambda);

    const Volume u_sigma = gaussian_regularize(u, p.sigma);
    Volume s = perpendicular_laplacian(u_sigma, frame, p.metric_S);
    for (double& v : s.values()) v = shock_sigmoid(v, p.shock_eps);
    out.s_switch = gaussian_regularize(s, p.rho);
    for (double& v : out.s_switch.values()) v = std::clamp(v, -1.0, 1.0);
    return out;
}

namespace {

FrameField fit_frame(const Volume& u, const RdsParams& p) {
    if (!p.use_gauge) return invariant_frame(u, p.xi);
    GaugeOptions opt;
    opt.xi = p.xi;
    opt.reg_sigma = p.gauge_reg_sigma;
    opt.pre_sigma = p.gauge_pre_sigma;
    opt.pre_sigma_angular = p.gauge_pre_sigma_angular;
    opt.degeneracy_tol = p.degeneracy_tol;
    return fit_gauge_frame(u, opt);
}

}  // namespace

RdsState make_rds_state(const Volume& u0, const RdsParams& p, std::optional<Mask> mask) {
    p.validate();
    if (u0.size() == 0) throw ParameterError("empty volume");
    if (!u0.all_finite()) throw ParameterError("initial data contains non-finite values");
    RdsState s;
    s.u = u0;
    s.u0 = u0;
    if (mask) {
        if (mask->depth == 1 && u0.orientations() != 1) {
            if (mask->width != u0.width() || mask->height != u0.height()) {
                throw ParameterError("mask shape does not match the volume");
            }
            mask = mask->extruded(u0.orientations());
        }
        if (!mask->matches(u0)) throw ParameterError("mask shape does not match the volume");
        s.mask = std::move(mask);
    }
    s.frame = fit_frame(u0, p);
    auto guidance = compute_guidance(u0, s.frame, p);
    s.g_switch = std::move(guidance.g_switch);
    s.s_switch = std::move(guidance.s_switch);
    s.tau = stable_timestep(p, u0);
    s.initial_min = u0.min();
    s.initial_max = u0.max();
    return s;
}

void rds_step(RdsState& state, const RdsParams& p) {
    const Volume& u = state.u;
    if (!state.frame.matches(u)) throw ParameterError("frame field does not match volume grid");
    if (!(state.tau > 0.0)) throw ParameterError("time step must be positive");

    if (state.step_count > 0) {
        bool refit = false;
        if (p.use_gauge && state.step_count % p.frame_refresh == 0) {
            state.frame = fit_frame(u, p);
            refit = true;
        }
        if (refit || state.step_count % p.guidance_refresh == 0) {
            auto guidance = compute_guidance(u, state.frame, p);
            state.g_switch = std::move(guidance.g_switch);
            state.s_switch = std::move(guidance.s_switch);
        }
    }

    const auto h = stencil::steps(u);
    std::array<double, 3> cd{};
    std::array<double, 3> cm{};
    for (int i = 0; i < 3; ++i) {
        cd[i] = p.metric_D.dual(i) / (h[i] * h[i]);
        cm[i] = p.metric_M.dual(i) / (h[i] * h[i]);
    }
    const double tau = state.tau;
    const Volume& gs = state.g_switch;
    const Volume& ss = state.s_switch;
    const Mask* mask = state.mask ? &*state.mask : nullptr;

    Volume next(u.width(), u.height(), u.orientations());
    stencil::for_each_arms(u, state.frame, [&](std::size_t idx, int, int, int, const stencil::Arms& a) {
        if (mask != nullptr && !(*mask)[idx]) {
            next[idx] = state.u0[idx];
            return;
        }
        const double g = gs[idx];
        const double s = ss[idx];
        double lap = 0.0;
        for (int i = 0; i < 3; ++i) lap += cd[i] * (a.plus[i] - 2.0 * a.center + a.minus[i]);
        double morph = 0.0;
        if (s != 0.0) {
            const UpwindMode mode = s < 0.0 ? UpwindMode::dilation : UpwindMode::erosion;
            double acc = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double d = detail::upwind_arm(a.plus[i], a.center, a.minus[i], mode);
                acc += cm[i] * d * d;
            }
            morph = s * std::sqrt(acc);
        }
        next[idx] = a.center + tau * (g * lap - (1.0 - g) * morph);
    });

    const double range = state.initial_max - state.initial_min;
    const double slack = 1e-6 * range;
    const double lo = next.min();
    const double hi = next.max();
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi > state.initial_max + slack ||
        lo < state.initial_min - slack) {
        std::ostringstream msg;
        msg << "instability at step " << state.step_count + 1 << " with tau = " << tau
            << ": range [" << lo << ", " << hi << "] left [" << state.initial_min << ", "
            << state.initial_max << "]";
        throw InstabilityError(msg.str(), tau, state.step_count + 1);
    }
    state.u = std::move(next);
    ++state.step_count;
}

RdsResult run_rds(const Volume& u0, const RdsParams& p, double T, std::optional<Mask> mask,
                  const RdsCheckpoint& checkpoint) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw ParameterError("evolution time must be non-negative");
    RdsState state = make_rds_state(u0, p, std::move(mask));
    const double stable = state.tau;
    double t = 0.0;
    const int steps = T > 0.0 ? static_cast<int>(std::ceil(T / stable - 1e-9)) : 0;
    for (int n = 0; n < steps; ++n) {
        state.tau = std::min(stable, T - t);
        if (!(state.tau > 0.0)) break;
        rds_step(state, p);
        t = n + 1 == steps ? T : t + state.tau;
        if (checkpoint) checkpoint(t, state);
    }
    RdsResult r;
    r.image = project(state.u);
    r.steps = state.step_count;
    r.tau = stable;
    r.frame_fallbacks = state.frame.fallback_count();
    r.volume = std::move(state.u);
    return r;
}

RdsResult run_rds(const Image& f, const WaveletStack& w, const RdsParams& p, double T,
                  std::optional<Mask> mask, const RdsCheckpoint& checkpoint) {
    return run_rds(lift(f, w), p, T, std::move(mask), checkpoint);
}

}  // namespace orientrds
