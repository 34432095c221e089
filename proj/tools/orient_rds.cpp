// orient-rds: batch front end for lifting, RDS filtering, inpainting and
// fixture generation. Exit codes: 0 ok, 2 parameter error, 3 I/O error,
// 4 numerical instability.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "orientrds/baseline2d.hpp"
#include "orientrds/config.hpp"
#include "orientrds/errors.hpp"
#include "orientrds/fixtures.hpp"
#include "orientrds/gauge.hpp"
#include "orientrds/inpaint.hpp"
#include "orientrds/io.hpp"
#include "orientrds/lift.hpp"
#include "orientrds/metrics.hpp"
#include "orientrds/rds.hpp"
#include "orientrds/threads.hpp"

using namespace orientrds;
namespace fs = std::filesystem;

namespace {

constexpr int kExitParameter = 2;
constexpr int kExitIo = 3;
constexpr int kExitInstability = 4;

struct Cli {
    std::string config_path;
    std::map<std::string, std::string> overrides;
    bool gauge = false;

    JobConfig job() const {
        JobConfig c = config_path.empty() ? JobConfig{} : JobConfig::load(config_path);
        for (const auto& [k, v] : overrides) c.set(k, v);
        if (gauge) c.use_gauge = true;
        c.validate();
        return c;
    }
};

// Every JobConfig key becomes --key VALUE on every subcommand.
void add_job_flags(CLI::App* app, Cli& cli) {
    app->add_option("--config", cli.config_path, "Job file of key = value lines")
        ->check(CLI::ExistingFile);
    app->add_flag("--gauge", cli.gauge, "Use the fitted gauge frame (same as --use_gauge true)");
    for (const auto& key : JobConfig::keys()) {
        app->add_option_function<std::string>(
            "--" + key, [&cli, key](const std::string& v) { cli.overrides[key] = v; },
            "Job key " + key);
    }
}

void require(const std::string& value, const char* key) {
    if (value.empty()) throw ParameterError(std::string("missing --") + key);
}

WaveletStack wavelets(const JobConfig& c) {
    return build_cake_wavelets(c.orientations, c.wavelet_size, c.angular_order, c.inflection);
}

void write_image(const std::string& path, const Image& f) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_png(path, f);
}

// PSNR samples at multiples of checkpoint_every (every step when zero).
struct PsnrTrace {
    const Image* truth = nullptr;
    double every = 0.0;
    double next = 0.0;
    std::vector<std::vector<double>> rows;

    void sample(double t, const Image& current) {
        if (truth == nullptr) return;
        if (every > 0.0 && t + 1e-12 < next) return;
        rows.push_back({t, psnr(current, *truth)});
        while (every > 0.0 && next <= t + 1e-12) next += every;
    }
};

void emit_trace(const JobConfig& c, const PsnrTrace& trace) {
    if (trace.truth == nullptr) return;
    for (const auto& r : trace.rows) std::printf("t=%.6g psnr_db=%.4f\n", r[0], r[1]);
    if (!c.csv.empty()) write_csv(c.csv, {"t", "psnr_db"}, trace.rows);
}

int cmd_lift(const JobConfig& c) {
    require(c.input, "input");
    require(c.output, "output");
    const Volume v = lift(read_image(c.input), wavelets(c));
    write_volume(c.output, v);
    std::printf("width=%d height=%d orientations=%d\n", v.width(), v.height(), v.orientations());
    return 0;
}

int cmd_project(const JobConfig& c) {
    require(c.input, "input");
    require(c.output, "output");
    write_image(c.output, project(read_volume(c.input)));
    return 0;
}

int cmd_denoise(const JobConfig& c) {
    require(c.input, "input");
    require(c.output, "output");
    const Image f = read_image(c.input);
    Image truth;
    PsnrTrace trace;
    if (!c.ground_truth.empty()) {
        truth = read_image(c.ground_truth);
        trace.truth = &truth;
        trace.every = c.checkpoint_every;
    }
    const RdsParams p = c.rds_params();
    const Volume v0 = lift(f, wavelets(c));
    trace.sample(0.0, project(v0));
    RdsCheckpoint cb;
    if (trace.truth != nullptr) {
        cb = [&trace](double t, const RdsState& s) { trace.sample(t, project(s.u)); };
    }
    const RdsResult r = run_rds(v0, p, c.T, {}, cb);
    write_image(c.output, r.image);
    std::printf("steps=%d tau=%.6g frame_fallbacks=%zu\n", r.steps, r.tau, r.frame_fallbacks);
    emit_trace(c, trace);
    return 0;
}

// The inpainted result replaces the input inside the hole only.
Image composite(const Image& input, const Image& result, const Mask& hole) {
    Image out = input;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (hole[i]) out[i] = result[i];
    return out;
}

int cmd_inpaint(const JobConfig& c) {
    require(c.input, "input");
    require(c.mask, "mask");
    require(c.output, "output");
    const Image f = read_image(c.input);
    const Mask hole = read_mask(c.mask);
    if (!hole.matches(f)) throw ParameterError("mask shape does not match the input");
    const InpaintOptions opt = c.inpaint_options();

    Image truth;
    if (!c.ground_truth.empty()) truth = read_image(c.ground_truth);

    const RdsResult r = inpaint(f, hole, wavelets(c), c.rds_params(), c.T, opt);
    const Image out = composite(f, r.image, hole);
    write_image(c.output, out);
    std::printf("steps=%d tau=%.6g hole_cells=%zu\n", r.steps, r.tau, hole.count());
    if (!truth.empty()) std::printf("psnr_db=%.4f\n", psnr(out, truth));

    if (!c.baseline_output.empty()) {
        const Image b = composite(f, inpaint2d(f, hole, c.baseline_params(), c.baseline_T, opt), hole);
        write_image(c.baseline_output, b);
        if (!truth.empty()) std::printf("baseline_psnr_db=%.4f\n", psnr(b, truth));
    }
    return 0;
}

int cmd_compare(const JobConfig& c) {
    require(c.input, "input");
    require(c.ground_truth, "ground_truth");
    const Image f = read_image(c.input);
    const Image g = read_image(c.ground_truth);
    const BinaryImage bf = binarize(f), bg = binarize(g);
    std::printf("psnr_db=%.4f\n", psnr(f, g));
    std::printf("dice=%.6f\n", dice(bf, bg));
    std::printf("precision=%.6f\n", precision(bf, bg));
    std::printf("dice_loss=%.6f\n", dice_loss(f, g));
    return 0;
}

int cmd_fixtures(const JobConfig& c, const std::string& dir) {
    require(dir, "dir");
    fs::create_directories(dir);
    const auto path = [&](const std::string& name) { return (fs::path(dir) / name).string(); };
    if (c.kind == "crossing") {
        const CrossingFixture fx = crossing_fixture(c.size, 14, 1.0, c.half_angle, c.axis_angle);
        write_png(path("crossing.png"), fx.clean);
        write_png(path("crossing_damaged.png"), fx.damaged);
        Image m(c.size, c.size);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = fx.hole[i] ? 1.0 : 0.0;
        write_png(path("crossing_mask.png"), m);
    } else if (c.kind == "circle") {
        write_png(path("circle.png"), circle_fixture(c.size, c.radius));
    } else if (c.kind == "spiral") {
        write_png(path("spiral.png"), spiral_fixture(c.size));
    } else if (c.kind == "ridge") {
        write_png(path("ridge.png"), ridge_fixture(c.size));
    } else if (c.kind == "noise") {
        // Signed field on the [0, 1] scale, stored losslessly as a one-slice volume.
        const Image n = correlated_noise(c.size, c.size, c.noise_sigma / 255.0, c.noise_rho, c.seed);
        Volume v(c.size, c.size, 1);
        std::copy(n.values().begin(), n.values().end(), v.values().begin());
        write_volume(path("noise.vol"), v);
        if (!c.input.empty()) {
            Image f = read_image(c.input);
            if (!f.same_shape(n)) throw ParameterError("noise size does not match the input");
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += n[i];
            write_png(path("degraded.png"), f);
        }
    } else {
        throw ParameterError("unknown fixture kind: " + c.kind);
    }
    return 0;
}

int cmd_gauge_diag(const JobConfig& c) {
    require(c.input, "input");
    const Volume v = lift(read_image(c.input), wavelets(c));
    GaugeOptions opt;
    opt.xi = c.xi;
    opt.reg_sigma = c.gauge_reg_sigma;
    opt.pre_sigma = c.gauge_pre_sigma;
    opt.pre_sigma_angular = c.gauge_pre_sigma_angular;
    opt.degeneracy_tol = c.degeneracy_tol;
    const FrameField fr = fit_gauge_frame(v, opt);
    Volume kappa(v.width(), v.height(), v.orientations());
    for (int k = 0; k < v.orientations(); ++k)
        for (int y = 0; y < v.height(); ++y)
            for (int x = 0; x < v.width(); ++x) kappa(x, y, k) = frame_curvature(fr, x, y, k);
    // Curvature statistics over the strongest tenth of the score.
    std::vector<double> mags(v.values().begin(), v.values().end());
    std::nth_element(mags.begin(), mags.begin() + mags.size() * 9 / 10, mags.end());
    const double cut = mags[mags.size() * 9 / 10];
    std::vector<double> strong;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] >= cut) strong.push_back(std::abs(kappa[i]));
    std::nth_element(strong.begin(), strong.begin() + strong.size() / 2, strong.end());
    std::printf("voxels=%zu fallbacks=%zu median_abs_curvature_strong=%.6g\n", v.size(),
                fr.fallback_count(), strong.empty() ? 0.0 : strong[strong.size() / 2]);
    if (!c.output.empty()) write_volume(c.output, kappa);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularised diffusion-shock filtering on position-orientation space"};
    app.require_subcommand(1);
    Cli cli;
    std::string fixture_dir;

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"lift", "Image to orientation-score volume"},
        {"project", "Volume to image (sum over orientations)"},
        {"denoise", "Lift, evolve, project; PSNR trace against ground_truth"},
        {"inpaint", "Evolve inside the mask with everything else clamped"},
        {"compare", "PSNR, Dice, precision and Dice loss against ground_truth"},
        {"fixtures", "Write synthetic test images"},
        {"gauge-diag", "Gauge-frame fallbacks and curvature statistics"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_job_flags(sub, cli);
        if (std::string(s.name) == "fixtures") {
            sub->add_option("dir", fixture_dir, "Output directory")->required();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParameter;
    }

    try {
        configure_threads_from_env();
        const JobConfig c = cli.job();
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "lift") return cmd_lift(c);
        if (cmd == "project") return cmd_project(c);
        if (cmd == "denoise") return cmd_denoise(c);
        if (cmd == "inpaint") return cmd_inpaint(c);
        if (cmd == "compare") return cmd_compare(c);
        if (cmd == "fixtures") return cmd_fixtures(c, fixture_dir);
        return cmd_gauge_diag(c);
    } catch (const InstabilityError& e) {
        std::fprintf(stderr, "error: %s (tau=%.6g, step %ld)\n", e.what(), e.tau(), e.step());
        return kExitInstability;
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParameter;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}
