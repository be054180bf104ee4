#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "patchdyn/vec2.hpp"

namespace pd {

// Real trigonometric polynomial c0 + sum_m (a_m cos(m t) + b_m sin(m t)).
struct TrigPoly {
    std::vector<double> cos_c;  // index m, cos_c[0] is the constant term
    std::vector<double> sin_c;  // index m, sin_c[0] unused

    int degree() const {
        return static_cast<int>(std::max(cos_c.size(), sin_c.size())) - 1;
    }
    double eval(double t) const;
    TrigPoly deriv() const;
    TrigPoly scaled(double s) const;
    TrigPoly plus(const TrigPoly& o) const;
    double mean() const { return cos_c.empty() ? 0.0 : cos_c[0]; }

    // Trapezoid projection of an arbitrary 2*pi-periodic function onto
    // harmonics 0..degree; exact when the function is a trig polynomial of
    // degree < nodes/2.
    static TrigPoly fit(const std::function<double(double)>& f, int degree,
                        int nodes = 2048);
};

enum class KernelVariant { biot_savart, grad_n, angular_fourier, linear_combination };

// Odd kernel, homogeneous of degree -1: k(x) = strength * Omega(arg x)/|x|,
// with Omega a pair of trig polynomials carrying odd harmonics only.
struct KernelSpec {
    KernelVariant variant = KernelVariant::biot_savart;
    TrigPoly omega1, omega2;  // angular profiles of the two components
    double strength = 1.0;
    std::string name = "biot_savart";

    static KernelSpec biot_savart(double strength = 1.0);
    static KernelSpec grad_n(double strength = 1.0);
    // Coefficients for odd harmonics m = 1, 3, 5, ... per component.
    static KernelSpec angular_fourier(const std::vector<double>& c1cos,
                                      const std::vector<double>& c1sin,
                                      const std::vector<double>& c2cos,
                                      const std::vector<double>& c2sin,
                                      double strength = 1.0);
    static KernelSpec linear_combination(
        const std::vector<std::pair<double, KernelSpec>>& terms);
};

// c[i][j] = integral over |x|=1 of k_i(x) x_j dsigma(x).
struct DeltaConstants {
    Mat2 c;
};

Vec2 kernel_eval(const KernelSpec& spec, const Vec2& x);
Mat2 kernel_grad(const KernelSpec& spec, const Vec2& x);
DeltaConstants delta_constants(const KernelSpec& spec);

struct KernelValidation {
    bool ok = false;
    double odd_residual = 0.0;
    double homogeneity_residual = 0.0;
    double second_difference_sup = 0.0;  // C2 smoothness proxy on the circle
    bool odd_ok = false;
    bool homogeneity_ok = false;
    bool smooth_ok = false;
    std::string detail;
};

KernelValidation kernel_validate(const KernelSpec& spec);

// |d1(x1 k) + d2(x2 k) - k|(x); zero for a degree -1 homogeneous kernel.
double euler_decomposition_check(const KernelSpec& spec, const Vec2& x);

}  // namespace pd
