#include "orientrds/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

namespace orientrds {

namespace {

using Field = std::variant<int JobConfig::*, double JobConfig::*, bool JobConfig::*,
                           std::string JobConfig::*, std::uint64_t JobConfig::*>;

struct Entry {
    const char* name;
    Field field;
};

// Serialisation order.
const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {"input", &JobConfig::input},
        {"output", &JobConfig::output},
        {"mask", &JobConfig::mask},
        {"ground_truth", &JobConfig::ground_truth},
        {"csv", &JobConfig::csv},
        {"baseline_output", &JobConfig::baseline_output},
        {"orientations", &JobConfig::orientations},
        {"wavelet_size", &JobConfig::wavelet_size},
        {"angular_order", &JobConfig::angular_order},
        {"inflection", &JobConfig::inflection},
        {"T", &JobConfig::T},
        {"xi", &JobConfig::xi},
        {"zeta_D", &JobConfig::zeta_D},
        {"zeta_M", &JobConfig::zeta_M},
        {"lambda", &JobConfig::lambda},
        {"sigma", &JobConfig::sigma},
        {"rho", &JobConfig::rho},
        {"nu", &JobConfig::nu},
        {"shock_eps", &JobConfig::shock_eps},
        {"use_gauge", &JobConfig::use_gauge},
        {"guidance_refresh", &JobConfig::guidance_refresh},
        {"frame_refresh", &JobConfig::frame_refresh},
        {"gauge_reg_sigma", &JobConfig::gauge_reg_sigma},
        {"gauge_pre_sigma", &JobConfig::gauge_pre_sigma},
        {"gauge_pre_sigma_angular", &JobConfig::gauge_pre_sigma_angular},
        {"degeneracy_tol", &JobConfig::degeneracy_tol},
        {"checkpoint_every", &JobConfig::checkpoint_every},
        {"mask_dilation", &JobConfig::mask_dilation},
        {"hole_fill", &JobConfig::hole_fill},
        {"baseline_lambda", &JobConfig::baseline_lambda},
        {"baseline_sigma", &JobConfig::baseline_sigma},
        {"baseline_rho", &JobConfig::baseline_rho},
        {"baseline_nu", &JobConfig::baseline_nu},
        {"baseline_T", &JobConfig::baseline_T},
        {"alpha", &JobConfig::alpha},
        {"kind", &JobConfig::kind},
        {"seed", &JobConfig::seed},
        {"size", &JobConfig::size},
        {"noise_sigma", &JobConfig::noise_sigma},
        {"noise_rho", &JobConfig::noise_rho},
        {"radius", &JobConfig::radius},
        {"half_angle", &JobConfig::half_angle},
        {"axis_angle", &JobConfig::axis_angle},
        {"require_quarter_turns", &JobConfig::require_quarter_turns},
    };
    return entries;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw ParameterError("invalid value '" + value + "' for key '" + key + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(out)) throw ParameterError("non-finite value for key '" + key + "'");
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

std::vector<std::string> JobConfig::keys() {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
}

void JobConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    for (const auto& e : registry()) {
        if (key != e.name) continue;
        std::visit(
            [&](auto member) {
                using M = std::remove_cvref_t<decltype(this->*member)>;
                if constexpr (std::is_same_v<M, std::string>) {
                    this->*member = value;
                } else if constexpr (std::is_same_v<M, bool>) {
                    if (value == "true" || value == "1") this->*member = true;
                    else if (value == "false" || value == "0") this->*member = false;
                    else throw ParameterError("invalid boolean '" + value + "' for key '" + key + "'");
                } else {
                    this->*member = parse_number<M>(key, value);
                }
            },
            e.field);
        return;
    }
    throw ParameterError("unknown configuration key '" + key + "'");
}

JobConfig JobConfig::parse(const std::string& text) {
    JobConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("line " + std::to_string(lineno) + ": expected key = value");
        }
        cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

JobConfig JobConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string JobConfig::serialize() const {
    std::ostringstream out;
    for (const auto& e : registry()) {
        out << e.name << " =";
        std::visit(
            [&](auto member) {
                using M = std::remove_cvref_t<decltype(this->*member)>;
                const auto& v = this->*member;
                if constexpr (std::is_same_v<M, std::string>) {
                    if (!v.empty()) out << ' ' << v;
                } else if constexpr (std::is_same_v<M, bool>) {
                    out << ' ' << (v ? "true" : "false");
                } else if constexpr (std::is_same_v<M, double>) {
                    out << ' ' << format_real(v);
                } else {
                    out << ' ' << v;
                }
            },
            e.field);
        out << '\n';
    }
    return out.str();
}

RdsParams JobConfig::rds_params() const {
    RdsParams p = RdsParams::from_anisotropy(zeta_D, zeta_M, xi);
    p.lambda = lambda;
    p.sigma = sigma;
    p.rho = rho;
    p.nu = nu;
    p.shock_eps = shock_eps;
    p.use_gauge = use_gauge;
    p.guidance_refresh = guidance_refresh;
    p.frame_refresh = frame_refresh;
    p.gauge_reg_sigma = gauge_reg_sigma;
    p.gauge_pre_sigma = gauge_pre_sigma;
    p.gauge_pre_sigma_angular = gauge_pre_sigma_angular;
    p.degeneracy_tol = degeneracy_tol;
    return p;
}

Rds2dParams JobConfig::baseline_params() const {
    Rds2dParams p;
    p.lambda = baseline_lambda;
    p.sigma = baseline_sigma;
    p.rho = baseline_rho;
    p.nu = baseline_nu;
    p.eps = shock_eps;
    p.tau = stable_timestep_2d();
    return p;
}

LayerParams JobConfig::layer_params() const {
    LayerParams p;
    p.metric_D = DiagonalMetric::from_anisotropy(xi, zeta_D);
    p.metric_M = DiagonalMetric::from_anisotropy(xi, zeta_M);
    p.metric_g = DiagonalMetric::from_anisotropy(xi, 1.0);
    p.metric_S = DiagonalMetric::from_anisotropy(xi, 1.0);
    p.lambda = lambda;
    p.eps = shock_eps;
    p.T = T;
    p.alpha = alpha;
    return p;
}

InpaintOptions JobConfig::inpaint_options() const {
    InpaintOptions o;
    o.mask_dilation = mask_dilation;
    o.fill = hole_fill == "outside_mean" ? HoleFill::outside_mean : HoleFill::keep;
    return o;
}

void JobConfig::validate() const {
    if (orientations < 1) throw ParameterError("orientations must be positive");
    if (require_quarter_turns && orientations % 4 != 0) {
        throw ParameterError("orientations must be divisible by 4 for quarter-turn equivariance");
    }
    if (!(T >= 0.0)) throw ParameterError("T must be non-negative");
    if (!(baseline_T >= 0.0)) throw ParameterError("baseline_T must be non-negative");
    if (!(checkpoint_every >= 0.0)) throw ParameterError("checkpoint_every must be non-negative");
    if (mask_dilation < 0) throw ParameterError("mask_dilation must be non-negative");
    if (hole_fill != "keep" && hole_fill != "outside_mean") {
        throw ParameterError("hole_fill must be keep or outside_mean");
    }
    if (size < 8) throw ParameterError("fixture size must be at least 8");
    if (!(noise_sigma >= 0.0) || !(noise_rho >= 0.0)) {
        throw ParameterError("noise scales must be non-negative");
    }
    if (!(zeta_D > 0.0) || !(zeta_M > 0.0)) throw ParameterError("anisotropies must be positive");
    rds_params().validate();
}

}  // namespace orientrds
