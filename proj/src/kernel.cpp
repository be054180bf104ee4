#include "patchdyn/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace pd {

double TrigPoly::eval(double t) const {
    double s = 0.0;
    for (int m = 0; m < static_cast<int>(cos_c.size()); ++m)
        if (cos_c[m] != 0.0) s += cos_c[m] * std::cos(m * t);
    for (int m = 1; m < static_cast<int>(sin_c.size()); ++m)
        if (sin_c[m] != 0.0) s += sin_c[m] * std::sin(m * t);
    return s;
}

TrigPoly TrigPoly::deriv() const {
    TrigPoly d;
    const int deg = degree();
    d.cos_c.assign(deg + 1, 0.0);
    d.sin_c.assign(deg + 1, 0.0);
    for (int m = 1; m <= deg; ++m) {
        const double a = m < static_cast<int>(cos_c.size()) ? cos_c[m] : 0.0;
        const double b = m < static_cast<int>(sin_c.size()) ? sin_c[m] : 0.0;
        d.sin_c[m] = -m * a;
        d.cos_c[m] = m * b;
    }
    return d;
}

TrigPoly TrigPoly::scaled(double s) const {
    TrigPoly r = *this;
    for (auto& c : r.cos_c) c *= s;
    for (auto& c : r.sin_c) c *= s;
    return r;
}

TrigPoly TrigPoly::plus(const TrigPoly& o) const {
    TrigPoly r;
    const size_t nc = std::max(cos_c.size(), o.cos_c.size());
    const size_t ns = std::max(sin_c.size(), o.sin_c.size());
    r.cos_c.assign(nc, 0.0);
    r.sin_c.assign(ns, 0.0);
    for (size_t m = 0; m < nc; ++m) {
        if (m < cos_c.size()) r.cos_c[m] += cos_c[m];
        if (m < o.cos_c.size()) r.cos_c[m] += o.cos_c[m];
    }
    for (size_t m = 0; m < ns; ++m) {
        if (m < sin_c.size()) r.sin_c[m] += sin_c[m];
        if (m < o.sin_c.size()) r.sin_c[m] += o.sin_c[m];
    }
    return r;
}

TrigPoly TrigPoly::fit(const std::function<double(double)>& f, int degree, int nodes) {
    TrigPoly p;
    p.cos_c.assign(degree + 1, 0.0);
    p.sin_c.assign(degree + 1, 0.0);
    const double h = 2.0 * kPi / nodes;
    std::vector<double> samples(nodes);
    for (int j = 0; j < nodes; ++j) samples[j] = f(j * h);
    for (int m = 0; m <= degree; ++m) {
        KahanSum ac, as;
        for (int j = 0; j < nodes; ++j) {
            ac.add(samples[j] * std::cos(m * j * h));
            as.add(samples[j] * std::sin(m * j * h));
        }
        const double norm = (m == 0) ? 1.0 / nodes : 2.0 / nodes;
        p.cos_c[m] = norm * ac.value();
        p.sin_c[m] = norm * as.value();
    }
    return p;
}

KernelSpec KernelSpec::biot_savart(double strength) {
    KernelSpec s;
    s.variant = KernelVariant::biot_savart;
    s.strength = strength;
    s.name = "biot_savart";
    // k(x) = (1/2pi) (-sin t, cos t)/|x|
    s.omega1.cos_c = {0.0, 0.0};
    s.omega1.sin_c = {0.0, -1.0 / (2.0 * kPi)};
    s.omega2.cos_c = {0.0, 1.0 / (2.0 * kPi)};
    s.omega2.sin_c = {0.0, 0.0};
    return s;
}

KernelSpec KernelSpec::grad_n(double strength) {
    KernelSpec s;
    s.variant = KernelVariant::grad_n;
    s.strength = strength;
    s.name = "grad_n";
    // k(x) = (1/2pi) (cos t, sin t)/|x|
    s.omega1.cos_c = {0.0, 1.0 / (2.0 * kPi)};
    s.omega1.sin_c = {0.0, 0.0};
    s.omega2.cos_c = {0.0, 0.0};
    s.omega2.sin_c = {0.0, 1.0 / (2.0 * kPi)};
    return s;
}

KernelSpec KernelSpec::angular_fourier(const std::vector<double>& c1cos,
                                       const std::vector<double>& c1sin,
                                       const std::vector<double>& c2cos,
                                       const std::vector<double>& c2sin,
                                       double strength) {
    KernelSpec s;
    s.variant = KernelVariant::angular_fourier;
    s.strength = strength;
    s.name = "angular_fourier";
    auto expand = [](const std::vector<double>& odd_coeffs) {
        // odd_coeffs[i] is the coefficient of harmonic m = 2i+1
        std::vector<double> full(2 * odd_coeffs.size() + 1, 0.0);
        for (size_t i = 0; i < odd_coeffs.size(); ++i) full[2 * i + 1] = odd_coeffs[i];
        return full;
    };
    s.omega1.cos_c = expand(c1cos);
    s.omega1.sin_c = expand(c1sin);
    s.omega2.cos_c = expand(c2cos);
    s.omega2.sin_c = expand(c2sin);
    return s;
}

KernelSpec KernelSpec::linear_combination(
    const std::vector<std::pair<double, KernelSpec>>& terms) {
    if (terms.empty())
        throw std::invalid_argument("linear_combination: no terms");
    KernelSpec s;
    s.variant = KernelVariant::linear_combination;
    s.strength = 1.0;
    s.name = "linear_combination";
    s.omega1 = TrigPoly{};
    s.omega2 = TrigPoly{};
    for (const auto& [w, k] : terms) {
        s.omega1 = s.omega1.plus(k.omega1.scaled(w * k.strength));
        s.omega2 = s.omega2.plus(k.omega2.scaled(w * k.strength));
    }
    return s;
}

namespace {

void check_nonzero(const Vec2& x) {
    if (x.norm() < 1e-14)
        throw std::invalid_argument("kernel: evaluation at the singularity");
}

}  // namespace

Vec2 kernel_eval(const KernelSpec& spec, const Vec2& x) {
    check_nonzero(x);
    const double r = x.norm();
    const double t = std::atan2(x.y, x.x);
    return Vec2{spec.omega1.eval(t), spec.omega2.eval(t)} * (spec.strength / r);
}

Mat2 kernel_grad(const KernelSpec& spec, const Vec2& x) {
    check_nonzero(x);
    const double r2 = x.norm2();
    const double t = std::atan2(x.y, x.x);
    const double ct = std::cos(t), st = std::sin(t);
    const TrigPoly d1 = spec.omega1.deriv();
    const TrigPoly d2 = spec.omega2.deriv();
    const double o1 = spec.omega1.eval(t), o1p = d1.eval(t);
    const double o2 = spec.omega2.eval(t), o2p = d2.eval(t);
    // k_i = Omega_i(t)/r; d1 k_i = (-Omega_i ct - Omega_i' st)/r^2,
    // d2 k_i = (-Omega_i st + Omega_i' ct)/r^2.
    Mat2 g(-o1 * ct - o1p * st, -o1 * st + o1p * ct,
           -o2 * ct - o2p * st, -o2 * st + o2p * ct);
    return g * (spec.strength / r2);
}

DeltaConstants delta_constants(const KernelSpec& spec) {
    const int nodes = 2048;
    const double h = 2.0 * kPi / nodes;
    KahanSum c11, c12, c21, c22;
    for (int j = 0; j < nodes; ++j) {
        const double t = j * h;
        const double ct = std::cos(t), st = std::sin(t);
        const double k1 = spec.strength * spec.omega1.eval(t);
        const double k2 = spec.strength * spec.omega2.eval(t);
        c11.add(k1 * ct);
        c12.add(k1 * st);
        c21.add(k2 * ct);
        c22.add(k2 * st);
    }
    DeltaConstants d;
    d.c = Mat2(c11.value(), c12.value(), c21.value(), c22.value()) * h;
    return d;
}

KernelValidation kernel_validate(const KernelSpec& spec) {
    KernelValidation v;
    const int samples = 256;
    double odd = 0.0, hom = 0.0;
    const double lambdas[] = {0.5, 2.0, 10.0};
    for (int j = 0; j < samples; ++j) {
        const double t = 2.0 * kPi * (j + 0.37) / samples;
        const Vec2 x{std::cos(t), std::sin(t)};
        const Vec2 kx = kernel_eval(spec, x);
        const Vec2 kmx = kernel_eval(spec, -x);
        odd = std::max(odd, (kx + kmx).norm());
        for (double lam : lambdas) {
            const Vec2 kl = kernel_eval(spec, x * lam);
            hom = std::max(hom, (kl * lam - kx).norm());
        }
    }
    // Sampled second differences of the angular profile (C2 proxy).
    const double hd = 1e-3;
    double sd = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double t = 2.0 * kPi * j / samples;
        for (const TrigPoly* p : {&spec.omega1, &spec.omega2}) {
            const double d2 = (p->eval(t + hd) - 2.0 * p->eval(t) + p->eval(t - hd)) / (hd * hd);
            sd = std::max(sd, std::abs(d2));
        }
    }
    v.odd_residual = odd;
    v.homogeneity_residual = hom;
    v.second_difference_sup = sd;
    v.odd_ok = odd < 1e-12;
    v.homogeneity_ok = hom < 1e-12;
    v.smooth_ok = sd < 1e6;
    v.ok = v.odd_ok && v.homogeneity_ok && v.smooth_ok;
    if (!v.odd_ok) v.detail += "oddness violated; ";
    if (!v.homogeneity_ok) v.detail += "homogeneity violated; ";
    if (!v.smooth_ok) v.detail += "second-difference bound exceeded; ";
    if (v.ok) v.detail = "pass";
    return v;
}

double euler_decomposition_check(const KernelSpec& spec, const Vec2& x) {
    check_nonzero(x);
    // d1(x1 k) + d2(x2 k) = 2k + (x . grad) k, componentwise.
    const Vec2 k = kernel_eval(spec, x);
    const Mat2 g = kernel_grad(spec, x);
    const Vec2 lhs = k * 2.0 + Vec2{g.a11 * x.x + g.a12 * x.y, g.a21 * x.x + g.a22 * x.y};
    return (lhs - k).norm();
}

}  // namespace pd
