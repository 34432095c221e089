#pragma once

#include <optional>

#include "orientrds/baseline2d.hpp"
#include "orientrds/core.hpp"
#include "orientrds/lift.hpp"
#include "orientrds/rds.hpp"

namespace orientrds {

enum class HoleFill {
    keep,          // evolve from the damaged data as given
    outside_mean,  // reset evolved cells to the mean of the clamped ones, per slice
};

struct InpaintOptions {
    /// Square dilation radius (pixels) applied to the hole before evolving.
    int mask_dilation = 0;
    HoleFill fill = HoleFill::keep;
};

/// Evolved region: the hole grown by opt.mask_dilation.
Mask inpainting_region(const Mask& hole, const InpaintOptions& opt);

/// Lifts f, applies the fill inside the region and evolves with every cell
/// outside the region clamped.
RdsResult inpaint(const Image& f, const Mask& hole, const WaveletStack& w, const RdsParams& p,
                  double T, const InpaintOptions& opt = {},
                  const RdsCheckpoint& checkpoint = {});

/// Planar counterpart on the same region and fill.
Image inpaint2d(const Image& f, const Mask& hole, const Rds2dParams& p, double T,
                const InpaintOptions& opt = {});

}  // namespace orientrds
