#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orientrds/baseline2d.hpp"
#include "orientrds/core.hpp"
#include "orientrds/inpaint.hpp"
#include "orientrds/layer.hpp"

namespace orientrds {

/// Flat job description shared by every CLI subcommand.
///
/// Text form: one `key = value` per line, `#` starts a comment, blank lines
/// are ignored. Values are typed (integer, real, boolean true/false, string);
/// unknown keys and malformed values are rejected with ParameterError.
struct JobConfig {
    // Paths.
    std::string input;
    std::string output;
    std::string mask;
    std::string ground_truth;
    std::string csv;
    std::string baseline_output;

    // Lifting.
    int orientations = 32;
    int wavelet_size = 31;
    int angular_order = 3;
    double inflection = 0.8;

    // Evolution.
    double T = 1.0;
    double xi = 0.1;
    double zeta_D = 1.0;
    double zeta_M = 1.0;
    double lambda = 0.1;
    double sigma = 1.0;
    double rho = 1.0;
    double nu = 1.0;
    double shock_eps = 1e-2;
    bool use_gauge = false;
    int guidance_refresh = 1;
    int frame_refresh = 5;
    double gauge_reg_sigma = 1.0;
    double gauge_pre_sigma = 1.0;
    double gauge_pre_sigma_angular = 0.4;
    double degeneracy_tol = 0.05;
    double checkpoint_every = 0.0;  // PSNR sampling interval; 0 = every step
    int mask_dilation = 0;          // pixels added around the inpainting hole
    std::string hole_fill = "keep";  // keep | outside_mean

    // Planar baseline.
    double baseline_lambda = 0.1;
    double baseline_sigma = 1.0;
    double baseline_rho = 2.0;
    double baseline_nu = 1.0;
    double baseline_T = 10.0;

    // Gated layer.
    double alpha = 0.65;

    // Fixtures and noise.
    std::string kind = "crossing";
    std::uint64_t seed = 0;
    int size = 64;
    double noise_sigma = 127.5;  // on the 0..255 scale
    double noise_rho = 2.0;
    double radius = 20.0;
    // Crossing lines run at axis_angle +- half_angle (radians); the defaults
    // give a horizontal and a vertical line.
    double half_angle = 0.7853981633974483;
    double axis_angle = 0.7853981633974483;

    // Validation switches.
    bool require_quarter_turns = false;  // demand 4 | orientations

    static JobConfig parse(const std::string& text);
    static JobConfig load(const std::string& path);

    /// Canonical text: every key in a fixed order, shortest round-trip reals.
    std::string serialize() const;

    /// Sets one key from its textual value.
    void set(const std::string& key, const std::string& value);

    /// Names of all keys, in serialisation order.
    static std::vector<std::string> keys();

    RdsParams rds_params() const;
    Rds2dParams baseline_params() const;
    LayerParams layer_params() const;
    InpaintOptions inpaint_options() const;

    void validate() const;
};

}  // namespace orientrds
