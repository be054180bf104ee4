#include <stdexcept>
#include <string>

#include "doctest.h"
#include "patchdyn/config.hpp"

using namespace pd;
using doctest::Contains;

TEST_CASE("minimal scenario fills defaults") {
    const ScenarioConfig cfg = parse_config_text(
        "shape.preset = circle\n"
        "shape.radius = 1\n"
        "kernel.variant = biot_savart\n"
        "evolve.dt = 1e-2\n"
        "evolve.t_final = 1\n");
    CHECK(cfg.n_markers == 128);
    CHECK(cfg.gamma == 0.5);
    CHECK(cfg.evolve.dt == 1e-2);
    CHECK(cfg.evolve.t_final == 1.0);
    CHECK(cfg.output_dir == "out");
    const Curve c = cfg.build_curve();
    CHECK(c.n == 128);
    const KernelSpec k = cfg.build_kernel();
    CHECK(k.name == "biot_savart");
}

TEST_CASE("comments, blank lines, whitespace") {
    const ScenarioConfig cfg = parse_config_text(
        "# full-line comment\n"
        "\n"
        "  shape.preset = ellipse   # trailing comment\n"
        "  shape.a=2\n"
        "shape.b =\t1\n"
        "shape.n = 64\n");
    CHECK(cfg.preset == Preset::ellipse);
    CHECK(cfg.shape.a == 2.0);
    CHECK(cfg.shape.b == 1.0);
    CHECK(cfg.n_markers == 64);
}

TEST_CASE("gamma out of range names the key") {
    CHECK_THROWS_WITH_AS(parse_config_text("diag.gamma = 1.5\n"),
                         Contains("diag.gamma"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("diag.gamma = 0\n"),
                         Contains("diag.gamma"), std::invalid_argument);
}

TEST_CASE("unknown keys are rejected with location") {
    CHECK_THROWS_WITH_AS(parse_config_text("kernel.strenght = 2\n", "bad.cfg"),
                         Contains("bad.cfg:1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("kernel.strenght = 2\n"),
                         Contains("kernel.strenght"), std::invalid_argument);
}

TEST_CASE("value range guards") {
    CHECK_THROWS(parse_config_text("evolve.dt = 0\n"));
    CHECK_THROWS(parse_config_text("evolve.t_final = -1\n"));
    CHECK_THROWS(parse_config_text("shape.radius = -2\n"));
    CHECK_THROWS(parse_config_text("shape.n = 21\n"));
    CHECK_THROWS(parse_config_text("shape.n = 8\n"));
    CHECK_THROWS(parse_config_text("evolve.record_every = 0\n"));
    CHECK_THROWS(parse_config_text("shape.preset = square\n"));
    CHECK_THROWS(parse_config_text("kernel.variant = cauchy\n"));
    CHECK_THROWS(parse_config_text("no equals sign here\n"));
    CHECK_THROWS(parse_config_text("shape.n = twelve\n"));
    CHECK_THROWS(parse_config_text("shape.n = 64.5\n"));
}

TEST_CASE("fourier kernel block") {
    const ScenarioConfig cfg = parse_config_text(
        "kernel.variant = angular_fourier\n"
        "kernel.fourier.c1cos = [0.3, 0.1]\n"
        "kernel.fourier.c1sin = [0.2]\n"
        "kernel.fourier.c2cos = []\n"
        "kernel.fourier.c2sin = [0.5]\n"
        "kernel.strength = 2\n");
    const KernelSpec k = cfg.build_kernel();
    CHECK(k.strength == 2.0);
    // harmonics 1 and 3 of component 1
    CHECK(k.omega1.cos_c[1] == 0.3);
    CHECK(k.omega1.cos_c[3] == 0.1);
    CHECK(k.omega1.sin_c[1] == 0.2);
    CHECK(k.omega2.sin_c[1] == 0.5);
    CHECK_THROWS(parse_config_text("kernel.fourier.c1cos = 0.3, 0.1\n"));
}

TEST_CASE("combination kernel block") {
    const ScenarioConfig cfg = parse_config_text(
        "kernel.variant = linear_combination\n"
        "kernel.combo.biot_savart = 0.5\n"
        "kernel.combo.grad_n = 0.5\n");
    const KernelSpec k = cfg.build_kernel();
    const Vec2 v = kernel_eval(k, {1.0, 0.0});
    const double c = 0.5 / (2.0 * kPi);
    CHECK(std::abs(v.x - c) < 1e-14);
    CHECK(std::abs(v.y - c) < 1e-14);
}

TEST_CASE("gamma propagates to the evolution block") {
    const ScenarioConfig cfg = parse_config_text("diag.gamma = 0.75\n");
    CHECK(cfg.evolve.gamma == 0.75);
}

TEST_CASE("file loading") {
    CHECK_THROWS(parse_config("/nonexistent/path/scenario.cfg"));
}
