#include "patchdyn/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pd {

EvenKernel EvenKernel::from_grad_entry(const KernelSpec& spec, int i, int j) {
    if (i < 1 || i > 2 || j < 1 || j > 2)
        throw std::invalid_argument("EvenKernel::from_grad_entry: indices must be 1 or 2");
    const TrigPoly& omega = (i == 1) ? spec.omega1 : spec.omega2;
    const TrigPoly domega = omega.deriv();
    const int deg = omega.degree() + 1;
    EvenKernel K;
    if (j == 1) {
        K.profile = TrigPoly::fit(
            [&](double t) {
                return spec.strength * (-omega.eval(t) * std::cos(t) - domega.eval(t) * std::sin(t));
            },
            deg);
    } else {
        K.profile = TrigPoly::fit(
            [&](double t) {
                return spec.strength * (-omega.eval(t) * std::sin(t) + domega.eval(t) * std::cos(t));
            },
            deg);
    }
    K.name = spec.name + "_grad_" + std::to_string(i) + std::to_string(j);
    K.check_valid();
    return K;
}

EvenKernel EvenKernel::quadrupole() {
    EvenKernel K;
    K.profile.cos_c = {0.0, 0.0, 1.0};
    K.profile.sin_c = {0.0, 0.0, 0.0};
    K.name = "quadrupole";
    return K;
}

double EvenKernel::sup_on_circle() const {
    double s = 0.0;
    for (int j = 0; j < 1024; ++j)
        s = std::max(s, std::abs(profile.eval(2.0 * kPi * j / 1024)));
    return s;
}

void EvenKernel::check_valid() const {
    double even_res = 0.0;
    for (int j = 0; j < 256; ++j) {
        const double t = 2.0 * kPi * (j + 0.13) / 256;
        even_res = std::max(even_res, std::abs(profile.eval(t + kPi) - profile.eval(t)));
    }
    const double scale = std::max(1.0, sup_on_circle());
    if (even_res > 1e-12 * scale)
        throw std::invalid_argument("EvenKernel: angular profile is not even under antipodes");
    if (std::abs(profile.mean()) > 1e-12 * scale)
        throw std::invalid_argument("EvenKernel: angular profile has nonzero circle mean");
}

namespace {

Mat2 grad_velocity_unchecked(const Curve& c, const VectorField& dX,
                             const KernelSpec& spec, const Vec2& z) {
    const double h = c.grid_spacing();
    KahanSum m11, m12, m21, m22;
    for (int j = 0; j < c.n; ++j) {
        const double speed = dX[j].norm();
        const Vec2 nhat = rot_minus90(dX[j] / speed);
        const Vec2 k = kernel_eval(spec, z - c.pts[j]);
        // d_j v_i = -contour integral k_i(z-w) n_j(w) dsigma(w)
        m11.add(-k.x * nhat.x * speed);
        m12.add(-k.x * nhat.y * speed);
        m21.add(-k.y * nhat.x * speed);
        m22.add(-k.y * nhat.y * speed);
    }
    return Mat2(m11.value(), m12.value(), m21.value(), m22.value()) * h;
}

Vec2 velocity_with_derivative(const Curve& c, const VectorField& dX,
                              const KernelSpec& spec, const Vec2& z, double tol) {
    const double h = c.grid_spacing();
    KahanSum2 acc;
    for (int j = 0; j < c.n; ++j) {
        const Vec2 d = z - c.pts[j];
        if (d.norm() < tol) continue;  // self-term: integrand limit is 0
        const Vec2 k = kernel_eval(spec, d);
        acc.add(k * dot(rot_minus90(d), dX[j]));
    }
    return acc.value() * h;
}

}  // namespace

Vec2 boundary_velocity(const Curve& c, const KernelSpec& spec, const Vec2& z) {
    const VectorField dX = derivative(c);
    const double tol = 1e-13 * std::max(1.0, curve_diameter(c));
    return velocity_with_derivative(c, dX, spec, z, tol);
}

VectorField velocity_on_markers(const Curve& c, const KernelSpec& spec) {
    const VectorField dX = derivative(c);
    const double tol = 1e-13 * std::max(1.0, curve_diameter(c));
    VectorField out;
    out.v.resize(c.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < c.n; ++i)
        out[i] = velocity_with_derivative(c, dX, spec, c.pts[i], tol);
    return out;
}

Mat2 grad_velocity_offcurve(const Curve& c, const KernelSpec& spec, const Vec2& z,
                            double eps_geom_rel) {
    const double diam = curve_diameter(c);
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& p : c.pts) dmin = std::min(dmin, (z - p).norm());
    if (dmin < eps_geom_rel * diam)
        throw std::invalid_argument("grad_velocity_offcurve: point too close to the boundary");

    const VectorField dX = derivative(c);
    return grad_velocity_unchecked(c, dX, spec, z);
}

double sup_grad_velocity(const Curve& c, const KernelSpec& spec) {
    const FrameField fr = tangent_normal(c);
    const VectorField dX = derivative(c);
    const double eps_probe = 3.0 * mean_marker_gap(c);

    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(static)
#endif
    for (int i = 0; i < c.n; ++i) {
        for (double sgn : {1.0, -1.0}) {
            const Vec2 z = c.pts[i] + fr.normal[i] * (sgn * eps_probe);
            const Mat2 g = grad_velocity_unchecked(c, dX, spec, z);
            sup = std::max(sup, g.opnorm());
        }
    }
    // On-curve tangential estimator: (d/dtheta) v(X(theta)) = grad v . X',
    // so |d v / dtheta| / |X'| lower-bounds the operator norm on the curve.
    const VectorField v = velocity_on_markers(c, spec);
    const VectorField dv = spectral_derivative(v);
    for (int i = 0; i < c.n; ++i)
        sup = std::max(sup, dv[i].norm() / dX[i].norm());
    return sup;
}

TruncationSweep tstar(const Curve& c, const EvenKernel& K, const Vec2& x,
                      const TstarConfig& cfg) {
    const double diam = curve_diameter(c);
    const double eps_max = cfg.eps_max > 0.0 ? cfg.eps_max : 0.5 * diam;
    const double eps_min = cfg.eps_min > 0.0 ? cfg.eps_min : 1e-4 * diam;
    if (!(eps_min < eps_max))
        throw std::invalid_argument("tstar: need eps_min < eps_max");
    const int M = cfg.n_angles;
    const double dt = 2.0 * kPi / M;
    const double rmin = 1e-12 * diam;
    const double rfar = 2.0 * diam + (x - curve_centroid_of_markers(c)).norm();

    struct Ray {
        double kval = 0.0;
        std::vector<std::pair<double, double>> inside;  // [lo, hi] radii inside D
    };
    std::vector<Ray> rays(M);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < M; ++j) {
        const double t = (j + 0.5) * dt;
        const Vec2 d{std::cos(t), std::sin(t)};
        rays[j].kval = K.eval_angular(t);
        std::vector<double> rs;
        for (int e = 0; e < c.n; ++e) {
            const Vec2& a = c.pts[e];
            const Vec2& b = c.pts[(e + 1) % c.n];
            const Vec2 ab = b - a;
            const double den = cross(d, ab);
            if (std::abs(den) < 1e-300) continue;
            const double r = cross(a - x, ab) / den;
            const double s = cross(a - x, d) / den;
            if (s >= 0.0 && s < 1.0 && r > rmin) rs.push_back(r);
        }
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end(),
                             [&](double u, double v) { return v - u < 1e-12 * diam; }),
                 rs.end());
        double lo = rmin;
        for (size_t k = 0; k <= rs.size(); ++k) {
            const double hi = (k < rs.size()) ? rs[k] : rfar;
            if (hi > lo) {
                const double mid = 0.5 * (lo + hi);
                if (point_in_polygon(c.pts, x + d * mid))
                    rays[j].inside.emplace_back(lo, hi);
            }
            lo = hi;
            if (k == rs.size()) break;
        }
    }

    TruncationSweep sweep;
    sweep.eps.resize(cfg.n_eps);
    sweep.value.resize(cfg.n_eps);
    sweep.running_sup.resize(cfg.n_eps);
    const double ratio = std::pow(eps_min / eps_max, 1.0 / (cfg.n_eps - 1));
    double run = 0.0;
    for (int k = 0; k < cfg.n_eps; ++k) {
        const double eps = eps_max * std::pow(ratio, k);
        KahanSum acc;
        for (int j = 0; j < M; ++j) {
            if (rays[j].kval == 0.0 || rays[j].inside.empty()) continue;
            double logsum = 0.0;
            for (const auto& [lo, hi] : rays[j].inside) {
                const double a = std::max(lo, eps);
                if (hi > a) logsum += std::log(hi / a);
            }
            acc.add(rays[j].kval * logsum);
        }
        sweep.eps[k] = eps;
        sweep.value[k] = acc.value() * dt;
        run = std::max(run, std::abs(sweep.value[k]));
        sweep.running_sup[k] = run;
    }
    return sweep;
}

double log_bound_rhs(double area, double q, double A) {
    if (!(area > 0.0 && q > 0.0 && A > 0.0))
        throw std::invalid_argument("log_bound_rhs: area, q, A must be positive");
    return A * (1.0 + std::max(0.0, std::log(std::sqrt(area) * q)));
}

}  // namespace pd
