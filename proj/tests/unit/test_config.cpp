#include <doctest.h>

#include "orientrds/config.hpp"

using namespace orientrds;

TEST_CASE("defaults follow the fixed metric choices") {
    const JobConfig c;
    CHECK(c.xi == 0.1);
    const RdsParams p = c.rds_params();
    CHECK(p.metric_g.g11 == doctest::Approx(0.01));
    CHECK(p.metric_g.g22 == doctest::Approx(0.01));
    CHECK(p.metric_S.g22 == doctest::Approx(0.01));
    CHECK(p.metric_g.g33 == 1.0);
    CHECK(p.xi == 0.1);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("parse handles every value type") {
    const JobConfig c = JobConfig::parse(
        "  # leading comment\n"
        "orientations = 16\n"
        "zeta_D = 0.25   # trailing comment\n"
        "use_gauge = true\n"
        "input = images/a b.png\n"
        "seed = 18446744073709551615\n");
    CHECK(c.orientations == 16);
    CHECK(c.zeta_D == 0.25);
    CHECK(c.use_gauge);
    CHECK(c.input == "images/a b.png");
    CHECK(c.seed == 18446744073709551615ull);
    const RdsParams p = c.rds_params();
    CHECK(p.use_gauge);
    CHECK(p.metric_D.g22 == doctest::Approx(0.01 / 0.0625));
}

TEST_CASE("unknown keys and malformed values are rejected") {
    CHECK_THROWS_AS(JobConfig::parse("orientation = 8\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::parse("orientations = 8.5\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::parse("lambda = abc\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::parse("lambda = inf\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::parse("use_gauge = maybe\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::parse("just a line\n"), ParameterError);
    CHECK_THROWS_AS(JobConfig::load("/nonexistent/job.cfg"), IoError);
}

TEST_CASE("serialize is a fixed point of parse") {
    JobConfig c;
    c.set("lambda", "0.1");
    c.set("T", "3.75");
    c.set("output", "out.png");
    c.set("use_gauge", "1");
    c.set("noise_sigma", "255");
    const std::string a = c.serialize();
    const std::string b = JobConfig::parse(a).serialize();
    CHECK(a == b);
    CHECK(JobConfig::parse(b).serialize() == b);
    CHECK(a.find("lambda = 0.1\n") != std::string::npos);
    // Every key appears once, in order.
    std::size_t pos = 0;
    for (const auto& k : JobConfig::keys()) {
        const auto at = a.find(k + " =", pos);
        REQUIRE(at != std::string::npos);
        pos = at;
    }
}

TEST_CASE("validation of derived parameters") {
    JobConfig c;
    c.orientations = 6;
    CHECK_NOTHROW(c.validate());
    c.require_quarter_turns = true;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = JobConfig{};
    c.zeta_D = 0.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = JobConfig{};
    c.T = -1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = JobConfig{};
    c.mask_dilation = -2;
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("baseline and layer parameter views") {
    JobConfig c;
    c.baseline_lambda = 0.07;
    c.alpha = 0.9;
    c.T = 2.0;
    const Rds2dParams b = c.baseline_params();
    CHECK(b.lambda == 0.07);
    CHECK(b.tau == stable_timestep_2d());
    const LayerParams l = c.layer_params();
    CHECK(l.alpha == 0.9);
    CHECK(l.T == 2.0);
    CHECK_NOTHROW(l.validate());
}

TEST_CASE("inpainting options") {
    JobConfig c = JobConfig::parse("mask_dilation = 3\nhole_fill = outside_mean\n");
    const InpaintOptions o = c.inpaint_options();
    CHECK(o.mask_dilation == 3);
    CHECK(o.fill == HoleFill::outside_mean);
    c.hole_fill = "zero";
    CHECK_THROWS_AS(c.validate(), ParameterError);
}
