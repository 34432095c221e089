#pragma once

#include <array>
#include <cstdint>

#include "orientrds/core.hpp"

namespace orientrds {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/// Counts with f as prediction and g as reference.
ConfusionCounts confusion(const BinaryImage& f, const BinaryImage& g);

enum class PsnrForm {
    standard,  // 10 log10(peak^2 / mean squared error)
    printed,   // 10 log10(255 / sum of squared errors), kept for comparison only
};

/// Returns +infinity for identical images.
double psnr(const Image& f, const Image& g, double peak = 1.0, PsnrForm form = PsnrForm::standard);

/// (2 TP + eps) / (2 TP + FP + FN + eps).
double dice(const BinaryImage& f, const BinaryImage& g, double eps = 1e-6);

/// (TP + eps) / (TP + FP + eps).
double precision(const BinaryImage& f, const BinaryImage& g, double eps = 1e-6);

enum class DiceLossForm {
    printed,  // 1 - sum(f g) / (sum(f + g) + eps)
    paired,   // 1 - 2 sum(f g) / (sum(f + g) + eps), equals 1 - dice on binary inputs
};

double dice_loss(const Image& f, const Image& g, double eps = 1e-6,
                 DiceLossForm form = DiceLossForm::printed);

/// Cells with value >= threshold.
BinaryImage binarize(const Image& f, double threshold = 0.5);

/// White Gaussian noise of standard deviation sigma blurred by a normalised
/// Gaussian of scale rho (reflective boundaries). Deterministic in seed.
Image correlated_noise(int width, int height, double sigma, double rho, std::uint64_t seed);

}  // namespace orientrds
