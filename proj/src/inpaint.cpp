#include "orientrds/inpaint.hpp"

#include "orientrds/errors.hpp"
#include "orientrds/fixtures.hpp"

namespace orientrds {

namespace {

// Resets the region cells of one w*h slice to the mean of the others.
void fill_slice(std::span<double> slice, const Mask& region) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < slice.size(); ++i)
        if (!region[i]) {
            sum += slice[i];
            ++n;
        }
    const double mean = n > 0 ? sum / static_cast<double>(n) : 0.0;
    for (std::size_t i = 0; i < slice.size(); ++i)
        if (region[i]) slice[i] = mean;
}

void check_hole(const Image& f, const Mask& hole) {
    if (hole.width != f.width() || hole.height != f.height() || hole.depth != 1) {
        throw ParameterError("hole mask must match the image");
    }
}

}  // namespace

Mask inpainting_region(const Mask& hole, const InpaintOptions& opt) {
    if (opt.mask_dilation < 0) throw ParameterError("mask_dilation must be non-negative");
    return opt.mask_dilation > 0 ? dilate(hole, opt.mask_dilation) : hole;
}

RdsResult inpaint(const Image& f, const Mask& hole, const WaveletStack& w, const RdsParams& p,
                  double T, const InpaintOptions& opt, const RdsCheckpoint& checkpoint) {
    check_hole(f, hole);
    const Mask region = inpainting_region(hole, opt);
    Volume v = lift(f, w);
    if (opt.fill == HoleFill::outside_mean) {
        for (int k = 0; k < v.orientations(); ++k)
            fill_slice(v.values().subspan(k * v.slice_size(), v.slice_size()), region);
    }
    return run_rds(v, p, T, region, checkpoint);
}

Image inpaint2d(const Image& f, const Mask& hole, const Rds2dParams& p, double T,
                const InpaintOptions& opt) {
    check_hole(f, hole);
    const Mask region = inpainting_region(hole, opt);
    Image u = f;
    if (opt.fill == HoleFill::outside_mean) fill_slice(u.values(), region);
    return run_rds2d(u, p, T, region);
}

}  // namespace orientrds
