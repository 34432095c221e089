#include "orientrds/metrics.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "orientrds/filters.hpp"

namespace orientrds {

namespace {

void check_pair(const BinaryImage& f, const BinaryImage& g) {
    if (f.width != g.width || f.height != g.height || f.depth != g.depth) {
        throw ParameterError("binary images differ in shape");
    }
}

}  // namespace

ConfusionCounts confusion(const BinaryImage& f, const BinaryImage& g) {
    check_pair(f, g);
    ConfusionCounts c;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const bool a = f[i];
        const bool b = g[i];
        if (a && b) ++c.tp;
        else if (a) ++c.fp;
        else if (b) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double psnr(const Image& f, const Image& g, double peak, PsnrForm form) {
    if (!f.same_shape(g)) throw ParameterError("images differ in shape");
    if (f.empty()) throw ParameterError("empty images");
    if (!(peak > 0.0)) throw ParameterError("peak must be positive");
    double sse = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double d = f[i] - g[i];
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    if (form == PsnrForm::printed) return 10.0 * std::log10(255.0 / sse);
    const double mse = sse / static_cast<double>(f.size());
    return 10.0 * std::log10(peak * peak / mse);
}

double dice(const BinaryImage& f, const BinaryImage& g, double eps) {
    const auto c = confusion(f, g);
    const double tp = static_cast<double>(c.tp);
    return (2.0 * tp + eps) / (2.0 * tp + static_cast<double>(c.fp + c.fn) + eps);
}

double precision(const BinaryImage& f, const BinaryImage& g, double eps) {
    const auto c = confusion(f, g);
    const double tp = static_cast<double>(c.tp);
    return (tp + eps) / (tp + static_cast<double>(c.fp) + eps);
}

double dice_loss(const Image& f, const Image& g, double eps, DiceLossForm form) {
    if (!f.same_shape(g)) throw ParameterError("images differ in shape");
    double inter = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        inter += f[i] * g[i];
        total += f[i] + g[i];
    }
    const double factor = form == DiceLossForm::paired ? 2.0 : 1.0;
    return 1.0 - factor * inter / (total + eps);
}

BinaryImage binarize(const Image& f, double threshold) {
    BinaryImage b(f.width(), f.height());
    for (std::size_t i = 0; i < f.size(); ++i) b.cells[i] = f[i] >= threshold ? 1 : 0;
    return b;
}

Image correlated_noise(int width, int height, double sigma, double rho, std::uint64_t seed) {
    if (width < 1 || height < 1) throw ParameterError("noise shape must be positive");
    if (!(sigma >= 0.0) || !(rho >= 0.0)) throw ParameterError("noise scales must be non-negative");
    Image n(width, height);
    if (sigma == 0.0) return n;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, sigma);
    for (double& v : n.values()) v = normal(rng);
    return gaussian_blur(n, rho);
}

}  // namespace orientrds
