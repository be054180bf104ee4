#pragma once

#include <vector>

#include "patchdyn/curve.hpp"
#include "patchdyn/kernel.hpp"

namespace pd {

// Real, even, zero-circle-mean angular profile; K(x) = profile(arg x)/|x|^2.
struct EvenKernel {
    TrigPoly profile;
    std::string name = "even_kernel";

    // Angular profile of the (i,j) entry of grad k (entries are even,
    // homogeneous of degree -2).  i, j in {1, 2}.
    static EvenKernel from_grad_entry(const KernelSpec& spec, int i, int j);
    // K(y) = (y1^2 - y2^2)/|y|^4 = cos(2t)/r^2.
    static EvenKernel quadrupole();

    double eval_angular(double t) const { return profile.eval(t); }
    double sup_on_circle() const;
    void check_valid() const;  // throws on even-symmetry or mean violation
};

// v(z) = contour integral of k(z-w) <-i(z-w), dw>; trapezoid rule on the
// parameter grid, self-term zero when z is a marker.
Vec2 boundary_velocity(const Curve& c, const KernelSpec& spec, const Vec2& z);

VectorField velocity_on_markers(const Curve& c, const KernelSpec& spec);

// Full Jacobian at an off-boundary point via d_j v_i(z) = -contour integral
// k_i(z-w) n_j(w) dsigma(w).  Throws if z is closer to the markers than
// eps_geom_rel * diameter.
Mat2 grad_velocity_offcurve(const Curve& c, const KernelSpec& spec, const Vec2& z,
                            double eps_geom_rel = 1e-3);

// Max operator norm of grad v over symmetric off-curve probes plus the
// on-curve tangential-derivative estimator.
double sup_grad_velocity(const Curve& c, const KernelSpec& spec);

struct TstarConfig {
    double eps_max = 0.0;   // 0 -> diam/2
    double eps_min = 0.0;   // 0 -> diam * 1e-4
    int n_eps = 40;
    int n_angles = 2048;
};

struct TruncationSweep {
    std::vector<double> eps;          // strictly decreasing
    std::vector<double> value;        // truncated integral at each eps
    std::vector<double> running_sup;  // running sup of |value|
    double sup() const { return running_sup.empty() ? 0.0 : running_sup.back(); }
};

// Truncated integrals of K(x-y) over D \ B(x, eps) for a geometric eps grid.
// Polar decomposition around x with exact ray-polygon clipping: the radial
// integral of chi_D d(log r) is evaluated in closed form per angular node, so
// only the angular discretization contributes error.
TruncationSweep tstar(const Curve& c, const EvenKernel& K, const Vec2& x,
                      const TstarConfig& cfg = {});

// A * (1 + log+( sqrt(area) * q )).
double log_bound_rhs(double area, double q, double A);

}  // namespace pd
