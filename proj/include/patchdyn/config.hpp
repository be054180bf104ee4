#pragma once

#include <string>
#include <vector>

#include "patchdyn/curve.hpp"
#include "patchdyn/evolve.hpp"
#include "patchdyn/kernel.hpp"

namespace pd {

// Scenario file: plain `key = value` lines with dotted sections, '#' comments.
// Unknown keys are errors.
struct ScenarioConfig {
    // shape block
    Preset preset = Preset::circle;
    ShapeParams shape;
    int n_markers = 128;

    // kernel block
    std::string kernel_variant = "biot_savart";
    double kernel_strength = 1.0;
    std::vector<double> fourier_c1cos, fourier_c1sin, fourier_c2cos, fourier_c2sin;
    double combo_biot_savart = 0.0;
    double combo_grad_n = 0.0;

    // evolution block
    RunConfig evolve;

    // diagnostics block
    double gamma = 0.5;
    int tstar_angles = 2048;
    int commutator_refine = 2;
    int commutator_stride = 4;

    // output block
    std::string output_dir = "out";

    Curve build_curve() const;
    KernelSpec build_kernel() const;
};

ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace pd
