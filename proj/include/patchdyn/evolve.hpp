#pragma once

#include <optional>
#include <string>
#include <vector>

#include "patchdyn/curve.hpp"
#include "patchdyn/kernel.hpp"

namespace pd {

struct SimState {
    double t = 0.0;
    Curve curve;
    Curve initial;  // frozen reference parametrization
    KernelSpec spec;
    int step_count = 0;
    std::vector<double> resample_events;
};

SimState make_state(const Curve& c0, const KernelSpec& spec);

// One row of the diagnostics time series.  CSV column order:
// t,area,b,holder,q,sup_grad_v,max_speed,gronwall_rhs,area_flux
struct DiagnosticsRecord {
    double t = 0.0;
    double area = 0.0;
    double b = 0.0;
    double holder = 0.0;      // ||dX/dtheta||_gamma over the parameter circle
    double q = 0.0;           // holder / b^{1+gamma}
    double sup_grad_v = 0.0;
    double max_speed = 0.0;
    double gronwall_rhs = 0.0;  // exp of the running integral of (1 + sup_grad_v)
    double area_flux = 0.0;     // contour integral <v, n> dsigma
};

VectorField rhs(const SimState& s);

// Classical RK4 update of all markers.  Throws on CFL violation (with a
// suggested dt in the message) or on post-step self-intersection.
SimState step(const SimState& s, double dt, double cfl_factor = 0.25);

struct GuardEvent {
    double t = 0.0;
    std::string code;  // "cfl", "self_intersection", "b_collapse", "runaway"
    std::string detail;
};

struct RunConfig {
    double dt = 1e-2;
    double t_final = 1.0;
    int record_every = 1;
    int snapshot_every = 0;  // 0 -> no intermediate snapshots kept
    double gamma = 0.5;
    double b_min_frac = 1e-3;     // halt when b < b_min_frac * b(0)
    double max_speed_bound = 1e6; // runaway detection
    double cfl_factor = 0.25;
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, Curve>> snapshots;  // (t, curve)
    SimState final_state;
    std::vector<GuardEvent> guard_events;
    bool guard_halt = false;
};

RunResult run(const SimState& s0, const RunConfig& cfg);

DiagnosticsRecord diagnostics(const SimState& s, double gamma, double running_integral);

struct GronwallReport {
    double c = 0.0;  // smallest C >= 1 with q(t) <= C exp(C I(t)) for all records
    bool finite = false;
    std::vector<double> margins;  // log of bound/q per record
};

GronwallReport gronwall_monitor(const std::vector<DiagnosticsRecord>& series);

struct AreaRateCheck {
    double dA_dt_numeric = 0.0;
    double flux = 0.0;
    double discrepancy = 0.0;
};

// d|D_t|/dt by a centered probe step vs the boundary flux quadrature.
AreaRateCheck area_rate_check(const SimState& s, double probe_dt = 1e-4);

void write_diagnostics_csv(const std::vector<DiagnosticsRecord>& records,
                           const std::string& path);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const std::string& path);

}  // namespace pd
