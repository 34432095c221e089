#include "orientrds/gauge.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <cmath>

#include "orientrds/diffops.hpp"
#include "orientrds/filters.hpp"

namespace orientrds {

HessianField::HessianField(int width, int height, int orientations)
    : width_(width), height_(height), orientations_(orientations) {
    for (auto& c : comp_) c = Volume(width, height, orientations);
}

HessianField::Matrix HessianField::at(int x, int y, int k) const noexcept {
    Matrix m{};
    const std::size_t idx = comp_[0].index(x, y, k);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m[i][j] = comp_[i * 3 + j][idx];
    }
    return m;
}

HessianField hessian_field(const Volume& v, double reg_sigma, double pre_sigma,
                           double pre_sigma_angular) {
    if (!(reg_sigma >= 0.0)) throw ParameterError("regularisation scale must be non-negative");
    const FrameField inv = invariant_frame(v);
    HessianField h(v.width(), v.height(), v.orientations());
    const Volume data = pre_sigma > 0.0 || pre_sigma_angular > 0.0
                            ? gaussian_regularize(v, pre_sigma, pre_sigma_angular)
                            : v;
    constexpr FrameAxis axes[3] = {FrameAxis::forward, FrameAxis::lateral, FrameAxis::angular};
    for (int i = 0; i < 3; ++i) {
        const Volume first = derivative_first(data, inv, axes[i]);
        for (int j = 0; j < 3; ++j) {
            Volume c = derivative_first(first, inv, axes[j]);
            if (reg_sigma > 0.0) gaussian_blur_slices(c, reg_sigma);
            h.component(i, j) = std::move(c);
        }
    }
    return h;
}

FrameField fit_gauge_frame(const HessianField& h, double xi, double degeneracy_tol) {
    if (!(xi > 0.0)) throw ParameterError("xi must be positive");
    if (!(degeneracy_tol >= 0.0)) throw ParameterError("degeneracy tolerance must be non-negative");
    const int W = h.width();
    const int H = h.height();
    const int K = h.orientations();
    const double dtheta = 2.0 * std::numbers::pi / K;
    std::vector<FrameField::Triple> triples(static_cast<std::size_t>(W) * H * K);
    std::size_t fallbacks = 0;

#pragma omp parallel for schedule(static) reduction(+ : fallbacks)
    for (int k = 0; k < K; ++k) {
        const FrameField::Triple aligned = invariant_triple(k * dtheta);
        const double c = aligned[0][0];
        const double s = aligned[0][1];
        // Invariant-frame components (a1, a2, a3) to fixed (x, y, theta).
        auto to_fixed = [c, s](double a1, double a2, double a3) {
            return Vec3{a1 * c - a2 * s, a1 * s + a2 * c, a3};
        };
        const Eigen::Vector3d scale(1.0 / xi, 1.0 / xi, 1.0);
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                const std::size_t idx = (static_cast<std::size_t>(k) * H + y) * W + x;
                const auto m = h.at(x, y, k);
                Eigen::Matrix3d a;
                for (int i = 0; i < 3; ++i) {
                    for (int j = 0; j < 3; ++j) a(i, j) = m[i][j] * scale[i] * scale[j];
                }
                bool ok = a.allFinite();
                Eigen::Vector3d t;
                if (ok) {
                    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(a, Eigen::ComputeFullV);
                    const auto& sv = svd.singularValues();
                    const double top = sv[0];
                    ok = top > 1e-12 && (sv[1] - sv[2]) > degeneracy_tol * top;
                    t = svd.matrixV().col(2);
                }
                if (!ok) {
                    triples[idx] = aligned;
                    ++fallbacks;
                    continue;
                }
                const double n = std::hypot(t[0], t[1]);
                if (n < 1e-12) {
                    if (t[2] < 0.0) t = -t;
                } else if (t[0] < 0.0 || (t[0] == 0.0 && t[1] < 0.0)) {
                    t = -t;
                }
                // Orthonormal completion in the Euclidean (M-scaled) picture:
                // X2 spatial and perpendicular, X3 = X1 x X2.
                Eigen::Vector3d x2;
                if (n < 1e-12) {
                    x2 = Eigen::Vector3d(0.0, 1.0, 0.0);
                } else {
                    x2 = Eigen::Vector3d(-t[1] / n, t[0] / n, 0.0);
                }
                const Eigen::Vector3d x3 = t.cross(x2);
                // Stored vectors: xi * M^-1 X for the two spatial-class axes,
                // M^-1 X for the angular axis.
                triples[idx] = FrameField::Triple{
                    to_fixed(t[0], t[1], xi * t[2]),
                    to_fixed(x2[0], x2[1], xi * x2[2]),
                    to_fixed(x3[0] / xi, x3[1] / xi, x3[2]),
                };
            }
        }
    }

    FrameField f = FrameField::from_triples(W, H, K, xi, std::move(triples));
    f.set_fallback_count(fallbacks);
    return f;
}

FrameField fit_gauge_frame(const Volume& v, const GaugeOptions& opt) {
    return fit_gauge_frame(hessian_field(v, opt.reg_sigma, opt.pre_sigma, opt.pre_sigma_angular),
                           opt.xi, opt.degeneracy_tol);
}

FrameField fit_gauge_frame(const Volume& v, double xi, double reg_sigma, double degeneracy_tol) {
    GaugeOptions opt;
    opt.xi = xi;
    opt.reg_sigma = reg_sigma;
    opt.degeneracy_tol = degeneracy_tol;
    return fit_gauge_frame(v, opt);
}

double frame_curvature(const FrameField& frame, int x, int y, int k) noexcept {
    const Vec3 b = frame.vector(FrameAxis::forward, x, y, k);
    const double n = std::hypot(b[0], b[1]);
    return n > 0.0 ? b[2] / n : 0.0;
}

}  // namespace orientrds
