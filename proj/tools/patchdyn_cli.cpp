// Command-line front end.  Subcommands:
//   simulate <scenario.cfg>      run the contour evolution, write CSVs + manifest
//   diagnose <output-dir>        recompute diagnostics from stored snapshots
//   verify-lemma1 [--shape ...]  jet-inequality check for the outward normal
//   extend [--shape ...]         divergence-free extension self-checks
//   commutator-check [...]       tangential-derivative vs patch-integral identity
//   tstar [--shape ...]          truncated-integral sweep for an even kernel
//   emit-plots <output-dir>      write a gnuplot script referencing the CSVs
//
// Exit codes: 0 success, 2 configuration error, 3 guard halt (healthy early
// stop), 4 numerical failure.  The environment variable PATCHDYN_OUTPUT_DIR
// overrides the output directory from any source.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "patchdyn/commutator.hpp"
#include "patchdyn/config.hpp"
#include "patchdyn/evolve.hpp"
#include "patchdyn/extension.hpp"
#include "patchdyn/velocity.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace pd;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGuardHalt = 3;
constexpr int kExitNumerical = 4;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string vec_str(const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt(v[i]);
    }
    return s + "]";
}

const char* preset_name(Preset p) {
    switch (p) {
        case Preset::circle: return "circle";
        case Preset::ellipse: return "ellipse";
        case Preset::perturbed_circle: return "perturbed_circle";
    }
    return "circle";
}

// Effective configuration as dotted keys; feeding these lines back through the
// parser reproduces the run exactly.
json config_echo(const ScenarioConfig& cfg) {
    json j;
    j["shape.preset"] = preset_name(cfg.preset);
    j["shape.radius"] = fmt(cfg.shape.radius);
    j["shape.a"] = fmt(cfg.shape.a);
    j["shape.b"] = fmt(cfg.shape.b);
    j["shape.eps"] = fmt(cfg.shape.eps);
    j["shape.m"] = std::to_string(cfg.shape.m);
    j["shape.n"] = std::to_string(cfg.n_markers);
    j["kernel.variant"] = cfg.kernel_variant;
    j["kernel.strength"] = fmt(cfg.kernel_strength);
    if (cfg.kernel_variant == "angular_fourier") {
        j["kernel.fourier.c1cos"] = vec_str(cfg.fourier_c1cos);
        j["kernel.fourier.c1sin"] = vec_str(cfg.fourier_c1sin);
        j["kernel.fourier.c2cos"] = vec_str(cfg.fourier_c2cos);
        j["kernel.fourier.c2sin"] = vec_str(cfg.fourier_c2sin);
    }
    if (cfg.kernel_variant == "linear_combination") {
        j["kernel.combo.biot_savart"] = fmt(cfg.combo_biot_savart);
        j["kernel.combo.grad_n"] = fmt(cfg.combo_grad_n);
    }
    j["evolve.dt"] = fmt(cfg.evolve.dt);
    j["evolve.t_final"] = fmt(cfg.evolve.t_final);
    j["evolve.record_every"] = std::to_string(cfg.evolve.record_every);
    j["evolve.snapshot_every"] = std::to_string(cfg.evolve.snapshot_every);
    j["evolve.b_min_frac"] = fmt(cfg.evolve.b_min_frac);
    j["evolve.max_speed_bound"] = fmt(cfg.evolve.max_speed_bound);
    j["diag.gamma"] = fmt(cfg.gamma);
    j["diag.tstar_angles"] = std::to_string(cfg.tstar_angles);
    j["diag.commutator_refine"] = std::to_string(cfg.commutator_refine);
    j["diag.commutator_stride"] = std::to_string(cfg.commutator_stride);
    j["output.dir"] = cfg.output_dir;
    return j;
}

std::string resolve_output_dir(const std::string& configured) {
    if (const char* env = std::getenv("PATCHDYN_OUTPUT_DIR"); env && *env)
        return env;
    return configured;
}

std::string snapshot_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "curve_t%.6f.csv", t);
    return buf;
}

// Shared flag-based shape selection for the verifier subcommands.
struct ShapeFlags {
    std::string shape = "circle";
    double radius = 1.0, a = 2.0, b = 1.0, eps = 0.1;
    int m = 3;
    int n = 128;
    double gamma = 0.5;

    void attach(CLI::App* cmd) {
        cmd->add_option("--shape", shape, "circle | ellipse | perturbed_circle")
            ->check(CLI::IsMember({"circle", "ellipse", "perturbed_circle"}));
        cmd->add_option("--radius", radius, "circle radius");
        cmd->add_option("--a", a, "ellipse semi-axis a");
        cmd->add_option("--b", b, "ellipse semi-axis b");
        cmd->add_option("--eps", eps, "perturbation amplitude");
        cmd->add_option("--m", m, "perturbation mode");
        cmd->add_option("--n", n, "number of markers");
        cmd->add_option("--gamma", gamma, "Holder exponent in (0,1)")
            ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    }

    Curve build() const {
        ShapeParams sp;
        sp.radius = radius;
        sp.a = a;
        sp.b = b;
        sp.eps = eps;
        sp.m = m;
        Preset p = Preset::circle;
        if (shape == "ellipse") p = Preset::ellipse;
        if (shape == "perturbed_circle") p = Preset::perturbed_circle;
        return preset_shape(p, sp, n, gamma);
    }
};

KernelSpec kernel_by_name(const std::string& name) {
    if (name == "biot_savart") return KernelSpec::biot_savart();
    if (name == "grad_n") return KernelSpec::grad_n();
    if (name == "mix")
        return KernelSpec::linear_combination(
            {{0.5, KernelSpec::biot_savart()}, {0.5, KernelSpec::grad_n()}});
    throw std::invalid_argument("unknown kernel '" + name +
                                "' (expected biot_savart | grad_n | mix)");
}

int cmd_simulate(const std::string& cfg_path) {
    const ScenarioConfig cfg = parse_config(cfg_path);
    const std::string out_dir = resolve_output_dir(cfg.output_dir);
    fs::create_directories(out_dir);

    SimState s0 = make_state(cfg.build_curve(), cfg.build_kernel());
    const RunResult res = run(s0, cfg.evolve);

    write_diagnostics_csv(res.records, out_dir + "/diagnostics.csv");
    json snaps = json::array();
    for (const auto& [t, c] : res.snapshots) {
        const std::string name = snapshot_name(t);
        if (!snaps.empty() && snaps.back() == name) continue;
        write_curve_csv(c, out_dir + "/" + name);
        snaps.push_back(name);
    }
    const std::string final_name = snapshot_name(res.final_state.t);
    write_curve_csv(res.final_state.curve, out_dir + "/" + final_name);
    if (snaps.back() != final_name) snaps.push_back(final_name);

    json manifest;
    manifest["config"] = config_echo(cfg);
    manifest["config_file"] = cfg_path;
    manifest["output_dir"] = out_dir;
    manifest["guard_halt"] = res.guard_halt;
    manifest["guard_events"] = json::array();
    for (const auto& e : res.guard_events)
        manifest["guard_events"].push_back({{"t", e.t}, {"code", e.code}, {"detail", e.detail}});
    manifest["resample_events"] = res.final_state.resample_events;
    manifest["snapshots"] = snaps;
    manifest["steps"] = res.final_state.step_count;
    manifest["t_final_reached"] = res.final_state.t;

    json fitted;
    const GronwallReport gr = gronwall_monitor(res.records);
    fitted["gronwall_c"] = gr.c;
    fitted["gronwall_finite"] = gr.finite;
    if (!res.records.empty()) {
        fitted["final_q"] = res.records.back().q;
        fitted["final_b"] = res.records.back().b;
    }
    manifest["fitted_constants"] = fitted;

    std::ofstream mf(out_dir + "/manifest.json");
    mf << manifest.dump(2) << "\n";

    std::printf("simulate: %d steps, t=%.6f, %zu records, %zu snapshots -> %s\n",
                res.final_state.step_count, res.final_state.t, res.records.size(),
                snaps.size(), out_dir.c_str());
    for (const auto& e : res.guard_events)
        std::printf("guard event at t=%.6f [%s]: %s\n", e.t, e.code.c_str(),
                    e.detail.c_str());
    if (res.guard_halt) {
        std::printf("halted by guard\n");
        return kExitGuardHalt;
    }
    return kExitOk;
}

int cmd_diagnose(const std::string& dir) {
    std::ifstream mf(dir + "/manifest.json");
    if (!mf) throw std::invalid_argument("diagnose: cannot open " + dir + "/manifest.json");
    json manifest;
    mf >> manifest;

    // rebuild the scenario from the config echo
    std::string cfg_text;
    for (const auto& [k, v] : manifest.at("config").items())
        cfg_text += k + " = " + v.get<std::string>() + "\n";
    const ScenarioConfig cfg = parse_config_text(cfg_text, dir + "/manifest.json");
    const KernelSpec spec = cfg.build_kernel();
    const Curve initial = cfg.build_curve();

    std::vector<DiagnosticsRecord> recomputed;
    double integral = 0.0, prev_t = 0.0, prev_rate = 0.0;
    bool first = true;
    for (const auto& name : manifest.at("snapshots")) {
        const Curve c = read_curve_csv(dir + "/" + name.get<std::string>(), cfg.gamma);
        SimState s = make_state(initial, spec);
        s.curve = c;
        // recover t from the filename curve_t<t>.csv
        const std::string n = name.get<std::string>();
        s.t = std::stod(n.substr(7, n.size() - 11));
        DiagnosticsRecord r = diagnostics(s, cfg.gamma, integral);
        // trapezoid running integral of (1 + sup|grad v|) on the snapshot grid
        const double rate = 1.0 + r.sup_grad_v;
        if (!first) integral += 0.5 * (rate + prev_rate) * (s.t - prev_t);
        r.gronwall_rhs = std::exp(integral);
        prev_t = s.t;
        prev_rate = rate;
        first = false;
        recomputed.push_back(r);
    }
    write_diagnostics_csv(recomputed, dir + "/diagnostics_recomputed.csv");
    std::printf("diagnose: %zu snapshot states -> %s/diagnostics_recomputed.csv\n",
                recomputed.size(), dir.c_str());
    std::printf("note: gronwall_rhs is re-integrated on the snapshot grid; all other\n"
                "columns are pure functions of the stored curves.\n");
    return kExitOk;
}

int cmd_verify_lemma1(const ShapeFlags& sf) {
    const Curve c = sf.build();
    const FrameField fr = tangent_normal(c);
    const JetVerifyResult r = jet_constant_verify(c, fr.normal, sf.gamma);
    std::printf("shape=%s n=%d gamma=%.4f\n", sf.shape.c_str(), sf.n, sf.gamma);
    std::printf("empirical sup |(y-x).N(x)| / |y-x|^{1+gamma} = %.12g\n", r.empirical_sup);
    std::printf("normal-field Holder seminorm                 = %.12g\n", r.holder_norm);
    std::printf("ratio = %.12g, admissible bound 2^(3+gamma/2) = %.12g\n", r.ratio,
                r.bound_A);
    std::printf("%s\n", r.ok ? "PASS" : "FAIL");
    return r.ok ? kExitOk : kExitNumerical;
}

int cmd_extend(const ShapeFlags& sf, const std::string& out_csv) {
    const Curve c = sf.build();
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, sf.gamma);

    double max_phi = 0.0, max_grad_dev = 0.0;
    for (int i = 0; i < c.n; ++i) {
        const auto [phi, grad] = ext.eval(c.pts[i]);
        max_phi = std::max(max_phi, std::abs(phi));
        max_grad_dev = std::max(max_grad_dev, (grad - rot_plus90(fr.tangent[i])).norm());
    }
    double max_div = 0.0;
    const double h = 1e-5;
    for (int k = 0; k < 2 * c.n; ++k) {
        const double scale = (k < c.n) ? 0.6 : 1.25;
        const Vec2 x = c.pts[k % c.n] * scale;
        const double d1 = (ext.field({x.x + h, x.y}).x - ext.field({x.x - h, x.y}).x) / (2 * h);
        const double d2 = (ext.field({x.x, x.y + h}).y - ext.field({x.x, x.y - h}).y) / (2 * h);
        max_div = std::max(max_div, std::abs(d1 + d2));
    }
    std::printf("shape=%s n=%d gamma=%.4f: %d cells, band=%.3e, collar=%.3e\n",
                sf.shape.c_str(), sf.n, sf.gamma, ext.n_cells(), ext.band_width(),
                ext.collar_width());
    std::printf("max |phi| at markers          = %.3e\n", max_phi);
    std::printf("max |grad phi - (-t2,t1)|     = %.3e\n", max_grad_dev);
    std::printf("max FD divergence (collar)    = %.3e\n", max_div);

    if (!out_csv.empty()) {
        std::ofstream f(out_csv);
        f << "x,y,phi,g1,g2\n";
        f.precision(17);
        for (int i = 0; i < c.n; ++i) {
            for (double scale : {0.6, 0.85, 1.15, 1.4}) {
                const Vec2 x = c.pts[i] * scale;
                const auto [phi, grad] = ext.eval(x);
                const Vec2 g{grad.y, -grad.x};
                f << x.x << ',' << x.y << ',' << phi << ',' << g.x << ',' << g.y << "\n";
            }
        }
        std::printf("field samples -> %s\n", out_csv.c_str());
    }
    const bool ok = max_phi < 1e-10 && max_grad_dev < 1e-6 && max_div < 1e-4;
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? kExitOk : kExitNumerical;
}

int cmd_commutator_check(const ShapeFlags& sf, const std::string& kernel, int stride,
                         int refine) {
    const Curve c = sf.build();
    const KernelSpec spec = kernel_by_name(kernel);
    Lemma3Params p;
    p.stride = stride;
    p.quad.refine = refine;
    const Lemma3Report rep = lemma3_check(c, spec, sf.gamma, p);
    std::printf("shape=%s kernel=%s n=%d gamma=%.4f stride=%d refine=%d\n",
                sf.shape.c_str(), kernel.c_str(), sf.n, sf.gamma, stride, refine);
    for (size_t i = 0; i < rep.markers.size(); ++i)
        std::printf("  marker %4d: rel discrepancy %.3e\n", rep.markers[i],
                    rep.rel_discrepancy[i]);
    std::printf("max rel discrepancy = %.3e (tolerance %.1e)\n", rep.max_rel_discrepancy,
                rep.tolerance);
    std::printf("sampled commutator seminorm = %.6g, shape bound = %.6g, fitted c = %.4f\n",
                rep.commutator_holder, rep.bound_shape, rep.fitted_c);
    std::printf("%s\n", rep.pass ? "PASS" : "FAIL");
    return rep.pass ? kExitOk : kExitNumerical;
}

int cmd_tstar(const ShapeFlags& sf, const std::string& entry, const std::string& point_str,
              int n_angles) {
    const Curve c = sf.build();
    Vec2 x;
    if (std::sscanf(point_str.c_str(), "%lf,%lf", &x.x, &x.y) != 2)
        throw std::invalid_argument("tstar: --point expects 'x,y'");

    EvenKernel K;
    if (entry == "quadrupole") {
        K = EvenKernel::quadrupole();
    } else if (entry.size() == 4 &&
               (entry.substr(0, 2) == "bs" || entry.substr(0, 2) == "gn")) {
        const KernelSpec base = entry.substr(0, 2) == "bs" ? KernelSpec::biot_savart()
                                                           : KernelSpec::grad_n();
        const int i = entry[2] - '0', j = entry[3] - '0';
        if (i < 1 || i > 2 || j < 1 || j > 2)
            throw std::invalid_argument("tstar: entry indices must be in {1,2}");
        K = EvenKernel::from_grad_entry(base, i, j);
    } else {
        throw std::invalid_argument(
            "tstar: --kernel-entry expects bsIJ | gnIJ | quadrupole");
    }

    TstarConfig tc;
    tc.n_angles = n_angles;
    const TruncationSweep sweep = tstar(c, K, x, tc);

    const std::string out_dir = resolve_output_dir("out");
    fs::create_directories(out_dir);
    const std::string path = out_dir + "/tstar.csv";
    std::ofstream f(path);
    f << "eps,value,running_sup\n";
    f.precision(17);
    for (size_t i = 0; i < sweep.eps.size(); ++i)
        f << sweep.eps[i] << ',' << sweep.value[i] << ',' << sweep.running_sup[i] << "\n";

    const bool finite = std::isfinite(sweep.sup());
    std::printf("shape=%s entry=%s point=(%.6g,%.6g): %zu eps values -> %s\n",
                sf.shape.c_str(), entry.c_str(), x.x, x.y, sweep.eps.size(), path.c_str());
    std::printf("running sup = %.12g (%s)\n", sweep.sup(), finite ? "finite" : "NOT finite");
    return finite ? kExitOk : kExitNumerical;
}

int cmd_emit_plots(const std::string& dir) {
    std::vector<std::string> curves;
    if (fs::exists(dir)) {
        for (const auto& e : fs::directory_iterator(dir)) {
            const std::string name = e.path().filename().string();
            if (name.rfind("curve_t", 0) == 0 && e.path().extension() == ".csv")
                curves.push_back(name);
        }
    }
    std::sort(curves.begin(), curves.end());

    const std::string path = dir + "/plots.gp";
    fs::create_directories(dir);
    std::ofstream f(path);
    f << "# gnuplot script; run from this directory:  gnuplot plots.gp\n"
         "set datafile separator ','\n"
         "set terminal pngcairo size 900,700\n"
         "\n"
         "set output 'diagnostics.png'\n"
         "set key outside\n"
         "set logscale y\n"
         "set xlabel 't'\n"
         "plot 'diagnostics.csv' using 1:2 with lines title 'area', \\\n"
         "     '' using 1:3 with lines title 'b', \\\n"
         "     '' using 1:5 with lines title 'q', \\\n"
         "     '' using 1:6 with lines title 'sup grad v', \\\n"
         "     '' using 1:9 with lines title 'gronwall rhs'\n"
         "unset logscale y\n"
         "\n"
         "set output 'curves.png'\n"
         "set size ratio -1\n"
         "set xlabel 'x'\n"
         "set ylabel 'y'\n";
    if (curves.empty()) {
        f << "# no curve snapshots found\n";
    } else {
        f << "plot ";
        for (size_t i = 0; i < curves.size(); ++i) {
            if (i) f << ", \\\n     ";
            f << "'" << curves[i] << "' using 2:3 with lines title '"
              << curves[i].substr(6, curves[i].size() - 10) << "'";
        }
        f << "\n";
    }
    std::printf("emit-plots: %zu curve snapshots -> %s\n", curves.size(), path.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contour dynamics for vortex patches with odd degree -1 kernels"};
    app.require_subcommand(1);

    std::string cfg_path, dir = "out", out_csv, kernel = "biot_savart";
    std::string entry = "bs11", point_str = "1,0";
    int stride = 4, refine = 1, n_angles = 2048;

    auto* sim = app.add_subcommand("simulate", "run a scenario file");
    sim->add_option("config", cfg_path, "scenario .cfg file")->required();

    auto* diag = app.add_subcommand("diagnose", "recompute diagnostics from snapshots");
    diag->add_option("dir", dir, "output directory of a previous simulate run")
        ->required();

    ShapeFlags sf_l1, sf_ext, sf_comm, sf_tstar;
    auto* l1 = app.add_subcommand("verify-lemma1", "normal-field jet inequality check");
    sf_l1.attach(l1);

    auto* ext = app.add_subcommand("extend", "divergence-free extension self-checks");
    sf_ext.attach(ext);
    ext->add_option("--samples-csv", out_csv, "also write field samples to this CSV");

    auto* comm = app.add_subcommand("commutator-check",
                                    "tangential derivative vs patch integral");
    sf_comm.attach(comm);
    comm->add_option("--kernel", kernel, "biot_savart | grad_n | mix");
    comm->add_option("--stride", stride, "marker sampling stride");
    comm->add_option("--refine", refine, "far-field triangle refinement level");

    auto* ts = app.add_subcommand("tstar", "truncated-integral sweep");
    sf_tstar.attach(ts);
    ts->add_option("--point", point_str, "evaluation point as 'x,y'");
    ts->add_option("--kernel-entry", entry, "bsIJ | gnIJ | quadrupole");
    ts->add_option("--angles", n_angles, "angular nodes of the polar rule");

    auto* plots = app.add_subcommand("emit-plots", "write a gnuplot script");
    plots->add_option("dir", dir, "output directory holding the CSVs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(cfg_path);
        if (diag->parsed()) return cmd_diagnose(dir);
        if (l1->parsed()) return cmd_verify_lemma1(sf_l1);
        if (ext->parsed()) return cmd_extend(sf_ext, out_csv);
        if (comm->parsed()) return cmd_commutator_check(sf_comm, kernel, stride, refine);
        if (ts->parsed()) return cmd_tstar(sf_tstar, entry, point_str, n_angles);
        if (plots->parsed()) return cmd_emit_plots(dir);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitConfig;
}
