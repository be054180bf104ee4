#include "patchdyn/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream out;
    out << origin << ":" << line << ": " << msg;
    throw std::invalid_argument(out.str());
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& v) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': cannot parse number from '" + v + "'");
    }
}

int parse_int(const std::string& origin, int line, const std::string& key,
              const std::string& v) {
    const double d = parse_double(origin, line, key, v);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        fail(origin, line, "key '" + key + "': expected an integer, got '" + v + "'");
    return i;
}

std::vector<double> parse_list(const std::string& origin, int line, const std::string& key,
                               std::string v) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        fail(origin, line, "key '" + key + "': expected a bracketed list like [0.1, 0.2]");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(origin, line, key, item));
    }
    return out;
}

}  // namespace

Curve ScenarioConfig::build_curve() const {
    return preset_shape(preset, shape, n_markers, gamma);
}

KernelSpec ScenarioConfig::build_kernel() const {
    if (kernel_variant == "biot_savart") return KernelSpec::biot_savart(kernel_strength);
    if (kernel_variant == "grad_n") return KernelSpec::grad_n(kernel_strength);
    if (kernel_variant == "angular_fourier")
        return KernelSpec::angular_fourier(fourier_c1cos, fourier_c1sin, fourier_c2cos,
                                           fourier_c2sin, kernel_strength);
    if (kernel_variant == "linear_combination") {
        std::vector<std::pair<double, KernelSpec>> terms;
        if (combo_biot_savart != 0.0)
            terms.emplace_back(combo_biot_savart, KernelSpec::biot_savart());
        if (combo_grad_n != 0.0) terms.emplace_back(combo_grad_n, KernelSpec::grad_n());
        KernelSpec s = KernelSpec::linear_combination(terms);
        s.strength = kernel_strength;
        return s;
    }
    throw std::invalid_argument("unknown kernel variant '" + kernel_variant + "'");
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) fail(origin, lineno, "empty key or value");

        if (key == "shape.preset") {
            if (val == "circle") cfg.preset = Preset::circle;
            else if (val == "ellipse") cfg.preset = Preset::ellipse;
            else if (val == "perturbed_circle") cfg.preset = Preset::perturbed_circle;
            else fail(origin, lineno, "shape.preset: unknown preset '" + val + "'");
        } else if (key == "shape.radius") {
            cfg.shape.radius = parse_double(origin, lineno, key, val);
            if (cfg.shape.radius <= 0.0) fail(origin, lineno, "shape.radius must be positive");
        } else if (key == "shape.a") {
            cfg.shape.a = parse_double(origin, lineno, key, val);
        } else if (key == "shape.b") {
            cfg.shape.b = parse_double(origin, lineno, key, val);
        } else if (key == "shape.eps") {
            cfg.shape.eps = parse_double(origin, lineno, key, val);
        } else if (key == "shape.m") {
            cfg.shape.m = parse_int(origin, lineno, key, val);
        } else if (key == "shape.n") {
            cfg.n_markers = parse_int(origin, lineno, key, val);
            if (cfg.n_markers < 16 || cfg.n_markers % 2 != 0)
                fail(origin, lineno, "shape.n must be even and >= 16");
        } else if (key == "kernel.variant") {
            if (val != "biot_savart" && val != "grad_n" && val != "angular_fourier" &&
                val != "linear_combination")
                fail(origin, lineno, "kernel.variant: unknown variant '" + val + "'");
            cfg.kernel_variant = val;
        } else if (key == "kernel.strength") {
            cfg.kernel_strength = parse_double(origin, lineno, key, val);
        } else if (key == "kernel.fourier.c1cos") {
            cfg.fourier_c1cos = parse_list(origin, lineno, key, val);
        } else if (key == "kernel.fourier.c1sin") {
            cfg.fourier_c1sin = parse_list(origin, lineno, key, val);
        } else if (key == "kernel.fourier.c2cos") {
            cfg.fourier_c2cos = parse_list(origin, lineno, key, val);
        } else if (key == "kernel.fourier.c2sin") {
            cfg.fourier_c2sin = parse_list(origin, lineno, key, val);
        } else if (key == "kernel.combo.biot_savart") {
            cfg.combo_biot_savart = parse_double(origin, lineno, key, val);
        } else if (key == "kernel.combo.grad_n") {
            cfg.combo_grad_n = parse_double(origin, lineno, key, val);
        } else if (key == "evolve.dt") {
            cfg.evolve.dt = parse_double(origin, lineno, key, val);
            if (cfg.evolve.dt <= 0.0) fail(origin, lineno, "evolve.dt must be positive");
        } else if (key == "evolve.t_final") {
            cfg.evolve.t_final = parse_double(origin, lineno, key, val);
            if (cfg.evolve.t_final <= 0.0) fail(origin, lineno, "evolve.t_final must be positive");
        } else if (key == "evolve.record_every") {
            cfg.evolve.record_every = parse_int(origin, lineno, key, val);
            if (cfg.evolve.record_every < 1) fail(origin, lineno, "evolve.record_every must be >= 1");
        } else if (key == "evolve.snapshot_every") {
            cfg.evolve.snapshot_every = parse_int(origin, lineno, key, val);
        } else if (key == "evolve.b_min_frac") {
            cfg.evolve.b_min_frac = parse_double(origin, lineno, key, val);
        } else if (key == "evolve.max_speed_bound") {
            cfg.evolve.max_speed_bound = parse_double(origin, lineno, key, val);
        } else if (key == "diag.gamma") {
            cfg.gamma = parse_double(origin, lineno, key, val);
            if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
                fail(origin, lineno, "diag.gamma must lie in (0,1)");
        } else if (key == "diag.tstar_angles") {
            cfg.tstar_angles = parse_int(origin, lineno, key, val);
        } else if (key == "diag.commutator_refine") {
            cfg.commutator_refine = parse_int(origin, lineno, key, val);
        } else if (key == "diag.commutator_stride") {
            cfg.commutator_stride = parse_int(origin, lineno, key, val);
        } else if (key == "output.dir") {
            cfg.output_dir = val;
        } else {
            fail(origin, lineno, "unknown key '" + key + "'");
        }
    }
    cfg.evolve.gamma = cfg.gamma;
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse_config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace pd
