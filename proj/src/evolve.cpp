#include "patchdyn/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "patchdyn/velocity.hpp"

namespace pd {

SimState make_state(const Curve& c0, const KernelSpec& spec) {
    if (!is_simple(c0)) throw std::invalid_argument("make_state: initial curve is not simple");
    SimState s;
    s.curve = c0;
    s.initial = c0;
    s.spec = spec;
    return s;
}

VectorField rhs(const SimState& s) {
    return velocity_on_markers(s.curve, s.spec);
}

namespace {

Curve displaced(const Curve& c, const VectorField& v, double scale) {
    Curve out = c;
    for (int i = 0; i < c.n; ++i) out.pts[i] += v[i] * scale;
    return out;
}

VectorField rk4_increment(const Curve& c, const KernelSpec& spec, double dt,
                          double* max_speed_out) {
    const VectorField k1 = velocity_on_markers(c, spec);
    if (max_speed_out) {
        double ms = 0.0;
        for (const auto& u : k1.v) ms = std::max(ms, u.norm());
        *max_speed_out = ms;
    }
    const VectorField k2 = velocity_on_markers(displaced(c, k1, 0.5 * dt), spec);
    const VectorField k3 = velocity_on_markers(displaced(c, k2, 0.5 * dt), spec);
    const VectorField k4 = velocity_on_markers(displaced(c, k3, dt), spec);
    VectorField inc;
    inc.v.resize(c.n);
    for (int i = 0; i < c.n; ++i)
        inc[i] = (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
    return inc;
}

double flux_through_boundary(const Curve& c, const KernelSpec& spec) {
    const VectorField v = velocity_on_markers(c, spec);
    const VectorField dX = derivative(c);
    KahanSum acc;
    for (int i = 0; i < c.n; ++i) {
        // <v, n> dsigma = <v, -i X'> dtheta
        acc.add(dot(v[i], rot_minus90(dX[i])));
    }
    return acc.value() * c.grid_spacing();
}

}  // namespace

SimState step(const SimState& s, double dt, double cfl_factor) {
    if (dt <= 0.0) throw std::invalid_argument("step: dt must be positive");
    if (cfl_factor <= 0.0) throw std::invalid_argument("step: cfl_factor must be positive");
    double max_speed = 0.0;
    const VectorField inc = rk4_increment(s.curve, s.spec, dt, &max_speed);
    const double gap = min_marker_gap(s.curve);
    if (dt * max_speed >= cfl_factor * gap) {
        std::ostringstream msg;
        msg << "step: CFL guard violated (dt*max_speed = " << dt * max_speed
            << " >= " << cfl_factor << "*min_gap = " << cfl_factor * gap
            << "); suggested dt <= " << 0.8 * cfl_factor * gap / std::max(max_speed, 1e-300);
        throw std::runtime_error(msg.str());
    }
    SimState out = s;
    for (int i = 0; i < s.curve.n; ++i) out.curve.pts[i] += inc[i];
    out.t = s.t + dt;
    out.step_count = s.step_count + 1;
    if (!is_simple(out.curve))
        throw std::runtime_error("step: curve self-intersects after step");
    return out;
}

DiagnosticsRecord diagnostics(const SimState& s, double gamma, double running_integral) {
    DiagnosticsRecord r;
    r.t = s.t;
    r.area = area(s.curve);
    r.b = bilipschitz_constant(s.curve, s.initial);
    const VectorField dX = derivative(s.curve);
    r.holder = holder_seminorm(dX, gamma);
    r.q = r.b > 0.0 ? r.holder / std::pow(r.b, 1.0 + gamma)
                    : std::numeric_limits<double>::infinity();
    r.sup_grad_v = sup_grad_velocity(s.curve, s.spec);
    const VectorField v = velocity_on_markers(s.curve, s.spec);
    for (const auto& u : v.v) r.max_speed = std::max(r.max_speed, u.norm());
    r.gronwall_rhs = std::exp(running_integral);
    r.area_flux = flux_through_boundary(s.curve, s.spec);
    return r;
}

RunResult run(const SimState& s0, const RunConfig& cfg) {
    if (cfg.dt <= 0.0 || cfg.t_final <= 0.0)
        throw std::invalid_argument("run: dt and t_final must be positive");
    RunResult res;
    SimState s = s0;
    const double b0 = bilipschitz_constant(s.curve, s.initial);
    const int n_steps = static_cast<int>(std::llround(cfg.t_final / cfg.dt));

    double running_integral = 0.0;
    double prev_supgrad = 0.0;
    double prev_t = s.t;
    bool have_prev = false;

    auto record = [&](const SimState& st) {
        DiagnosticsRecord r = diagnostics(st, cfg.gamma, 0.0);
        // Trapezoid accumulation of integral (1 + sup_grad_v) dt over records.
        if (have_prev)
            running_integral +=
                0.5 * (st.t - prev_t) * ((1.0 + prev_supgrad) + (1.0 + r.sup_grad_v));
        prev_supgrad = r.sup_grad_v;
        prev_t = st.t;
        have_prev = true;
        r.gronwall_rhs = std::exp(running_integral);
        res.records.push_back(r);
    };

    record(s);
    res.snapshots.emplace_back(s.t, s.curve);

    for (int k = 1; k <= n_steps; ++k) {
        try {
            s = step(s, cfg.dt, cfg.cfl_factor);
        } catch (const std::runtime_error& e) {
            res.guard_events.push_back({s.t, std::string(e.what()).find("CFL") != std::string::npos
                                                ? "cfl"
                                                : "self_intersection",
                                        e.what()});
            res.guard_halt = true;
            break;
        }
        const double b = bilipschitz_constant(s.curve, s.initial);
        if (b < cfg.b_min_frac * b0) {
            res.guard_events.push_back({s.t, "b_collapse", "bilipschitz constant collapsed"});
            res.guard_halt = true;
            break;
        }
        double ms = 0.0;
        for (const auto& p : velocity_on_markers(s.curve, s.spec).v)
            ms = std::max(ms, p.norm());
        if (ms > cfg.max_speed_bound) {
            res.guard_events.push_back({s.t, "runaway", "marker speed exceeded bound"});
            res.guard_halt = true;
            break;
        }
        if (k % cfg.record_every == 0 || k == n_steps) record(s);
        if (cfg.snapshot_every > 0 && (k % cfg.snapshot_every == 0 || k == n_steps))
            res.snapshots.emplace_back(s.t, s.curve);
    }
    if (res.guard_halt) res.snapshots.emplace_back(s.t, s.curve);
    res.final_state = s;
    return res;
}

GronwallReport gronwall_monitor(const std::vector<DiagnosticsRecord>& series) {
    if (series.empty())
        throw std::invalid_argument("gronwall_monitor: empty series");
    GronwallReport rep;
    for (const auto& r : series)
        if (!std::isfinite(r.q)) return rep;  // finite=false flag

    // I(t) by trapezoid over the records.
    const size_t n = series.size();
    std::vector<double> integral(n, 0.0);
    for (size_t i = 1; i < n; ++i)
        integral[i] = integral[i - 1] +
                      0.5 * (series[i].t - series[i - 1].t) *
                          ((1.0 + series[i - 1].sup_grad_v) + (1.0 + series[i].sup_grad_v));

    auto satisfied = [&](double c) {
        for (size_t i = 0; i < n; ++i)
            if (series[i].q > c * std::exp(c * integral[i])) return false;
        return true;
    };
    double hi = 1.0;
    int iter = 0;
    while (!satisfied(hi) && iter++ < 60) hi *= 2.0;
    if (!satisfied(hi)) return rep;  // q grows faster than any tested C
    double lo = 1.0;
    if (satisfied(lo)) {
        rep.c = 1.0;
    } else {
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (satisfied(mid) ? hi : lo) = mid;
        }
        rep.c = hi;
    }
    rep.finite = true;
    rep.margins.resize(n);
    for (size_t i = 0; i < n; ++i)
        rep.margins[i] = std::log(rep.c) + rep.c * integral[i] - std::log(std::max(series[i].q, 1e-300));
    return rep;
}

AreaRateCheck area_rate_check(const SimState& s, double probe_dt) {
    AreaRateCheck r;
    const VectorField inc_f = rk4_increment(s.curve, s.spec, probe_dt, nullptr);
    const VectorField inc_b = rk4_increment(s.curve, s.spec, -probe_dt, nullptr);
    Curve cf = s.curve, cb = s.curve;
    for (int i = 0; i < s.curve.n; ++i) {
        cf.pts[i] += inc_f[i];
        cb.pts[i] += inc_b[i];
    }
    r.dA_dt_numeric = (area(cf) - area(cb)) / (2.0 * probe_dt);
    r.flux = flux_through_boundary(s.curve, s.spec);
    r.discrepancy = std::abs(r.dA_dt_numeric - r.flux);
    return r;
}

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_diagnostics_csv: cannot open " + path);
    out.precision(17);
    out << "t,area,b,holder,q,sup_grad_v,max_speed,gronwall_rhs,area_flux\n";
    for (const auto& r : records)
        out << r.t << "," << r.area << "," << r.b << "," << r.holder << "," << r.q << ","
            << r.sup_grad_v << "," << r.max_speed << "," << r.gronwall_rhs << ","
            << r.area_flux << "\n";
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_diagnostics_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_diagnostics_csv: empty file " + path);
    std::vector<DiagnosticsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        DiagnosticsRecord r;
        if (!(ss >> r.t >> r.area >> r.b >> r.holder >> r.q >> r.sup_grad_v >>
              r.max_speed >> r.gronwall_rhs >> r.area_flux))
            throw std::runtime_error("read_diagnostics_csv: bad row: " + line);
        out.push_back(r);
    }
    return out;
}

}  // namespace pd
