#include "orientrds/baseline2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orientrds/filters.hpp"
#include "orientrds/rds.hpp"

namespace orientrds {

namespace {

// Value at (x + dx, y + dy) with reflective boundaries, integer offsets.
inline double at_reflect(const Image& f, int x, int y) noexcept {
    return f(reflect_spatial(x, f.width()), reflect_spatial(y, f.height()));
}

}  // namespace

StructureTensorField structure_tensor(const Image& f, double sigma, double rho) {
    if (!(sigma >= 0.0) || !(rho >= 0.0)) throw ParameterError("scales must be non-negative");
    const int W = f.width();
    const int H = f.height();
    const Image fs = gaussian_blur(f, sigma);
    Image j11(W, H), j12(W, H), j22(W, H);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const double gx = 0.5 * (at_reflect(fs, x + 1, y) - at_reflect(fs, x - 1, y));
            const double gy = 0.5 * (at_reflect(fs, x, y + 1) - at_reflect(fs, x, y - 1));
            j11(x, y) = gx * gx;
            j12(x, y) = gx * gy;
            j22(x, y) = gy * gy;
        }
    }
    j11 = gaussian_blur(j11, rho);
    j12 = gaussian_blur(j12, rho);
    j22 = gaussian_blur(j22, rho);

    StructureTensorField out;
    out.width = W;
    out.height = H;
    out.sigma = sigma;
    out.rho = rho;
    out.tensors.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.tensors[i] = {j11[i], j12[i], j22[i]};
    return out;
}

Direction2 dominant_direction(const std::array<double, 3>& j, double tol) noexcept {
    const double a = j[0];
    const double b = j[1];
    const double c = j[2];
    const double half_gap = std::hypot(0.5 * (a - c), b);
    if (2.0 * half_gap < tol || !(half_gap == half_gap)) return {1.0, 0.0};
    const double top = 0.5 * (a + c) + half_gap;
    Direction2 w = a >= c ? Direction2{top - c, b} : Direction2{b, top - a};
    const double n = std::hypot(w[0], w[1]);
    w[0] /= n;
    w[1] /= n;
    if (w[0] < 0.0 || (w[0] == 0.0 && w[1] < 0.0)) {
        w[0] = -w[0];
        w[1] = -w[1];
    }
    w[0] += 0.0;
    w[1] += 0.0;
    return w;
}

std::vector<Direction2> dominant_direction(const StructureTensorField& j, double tol) {
    std::vector<Direction2> out(j.tensors.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = dominant_direction(j.tensors[i], tol);
    return out;
}

void Rds2dParams::validate() const {
    if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (!(sigma >= 0.0) || !(rho >= 0.0) || !(nu >= 0.0)) {
        throw ParameterError("scales must be non-negative");
    }
    if (!(tau > 0.0)) throw ParameterError("time step must be positive");
}

double stable_timestep_2d(double dxy) {
    return std::min(dxy * dxy / 4.0, dxy / std::sqrt(2.0));
}

Image rds2d_step(const Image& u, const Rds2dParams& p, const Image* u0, const Mask* mask) {
    p.validate();
    const int W = u.width();
    const int H = u.height();
    if (u0 != nullptr && !u0->same_shape(u)) throw ParameterError("initial image shape mismatch");
    if (mask != nullptr && !mask->matches(u)) throw ParameterError("mask shape does not match image");
    if (mask != nullptr && u0 == nullptr) throw ParameterError("masked step needs initial data");

    const Image u_nu = gaussian_blur(u, p.nu);
    const Image u_sigma = gaussian_blur(u, p.sigma);
    const auto dirs = dominant_direction(structure_tensor(u, p.sigma, p.rho));

    Image next(W, H);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const std::size_t idx = u.index(x, y);
            if (mask != nullptr && !(*mask)[idx]) {
                next[idx] = (*u0)[idx];
                continue;
            }
            const double c = u[idx];
            const double xp = at_reflect(u, x + 1, y);
            const double xm = at_reflect(u, x - 1, y);
            const double yp = at_reflect(u, x, y + 1);
            const double ym = at_reflect(u, x, y - 1);
            const double lap = xp + xm + yp + ym - 4.0 * c;

            const double gx = 0.5 * (at_reflect(u_nu, x + 1, y) - at_reflect(u_nu, x - 1, y));
            const double gy = 0.5 * (at_reflect(u_nu, x, y + 1) - at_reflect(u_nu, x, y - 1));
            const double g = charbonnier(gx * gx + gy * gy, p.lambda);

            const auto& w = dirs[idx];
            const double dww = bilinear_sample(u_sigma, x + w[0], y + w[1]) - 2.0 * u_sigma[idx] +
                               bilinear_sample(u_sigma, x - w[0], y - w[1]);
            const double s = shock_sigmoid(dww, p.eps);

            double morph = 0.0;
            if (s != 0.0) {
                double dx = 0.0;
                double dy = 0.0;
                if (s < 0.0) {
                    dx = std::max({xp - c, xm - c, 0.0});
                    dy = std::max({yp - c, ym - c, 0.0});
                } else {
                    dx = std::max({c - xp, c - xm, 0.0});
                    dy = std::max({c - yp, c - ym, 0.0});
                }
                morph = s * std::sqrt(dx * dx + dy * dy);
            }
            next[idx] = c + p.tau * (g * lap - (1.0 - g) * morph);
        }
    }

    const double lo = u.min();
    const double hi = u.max();
    const double slack = 1e-6 * (hi - lo);
    const double nlo = next.min();
    const double nhi = next.max();
    if (!std::isfinite(nlo) || !std::isfinite(nhi) || nhi > hi + slack || nlo < lo - slack) {
        std::ostringstream msg;
        msg << "planar step left the data range with tau = " << p.tau;
        throw InstabilityError(msg.str(), p.tau, 1);
    }
    return next;
}

Image run_rds2d(const Image& f, const Rds2dParams& p, double T, const std::optional<Mask>& mask) {
    if (!(T >= 0.0) || !std::isfinite(T)) throw ParameterError("evolution time must be non-negative");
    if (mask && !mask->matches(f)) throw ParameterError("mask shape does not match image");
    const double tau = std::min(p.tau, stable_timestep_2d());
    const int steps = T > 0.0 ? static_cast<int>(std::ceil(T / tau - 1e-9)) : 0;
    Image u = f;
    Rds2dParams q = p;
    double t = 0.0;
    for (int n = 0; n < steps; ++n) {
        q.tau = std::min(tau, T - t);
        if (!(q.tau > 0.0)) break;
        try {
            u = rds2d_step(u, q, &f, mask ? &*mask : nullptr);
        } catch (const InstabilityError& e) {
            throw InstabilityError(e.what(), e.tau(), n + 1);
        }
        t += q.tau;
    }
    return u;
}

}  // namespace orientrds
