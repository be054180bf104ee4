#include "patchdyn/reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pd::ref {

double holder_seminorm(const VectorField& f, double gamma) {
    const int n = f.size();
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ti = 2.0 * kPi * i / n;
        for (int j = i + 1; j < n; ++j) {
            const double tj = 2.0 * kPi * j / n;
            const double d = 2.0 * std::abs(std::sin(0.5 * (ti - tj)));
            sup = std::max(sup, (f[i] - f[j]).norm() / std::pow(d, gamma));
        }
    }
    return sup;
}

double bilipschitz_constant(const Curve& current, const Curve& reference) {
    if (current.n != reference.n)
        throw std::invalid_argument("ref::bilipschitz_constant: marker counts differ");
    double b = std::numeric_limits<double>::infinity();
    for (int i = 0; i < current.n; ++i) {
        for (int j = i + 1; j < current.n; ++j) {
            const double da = (reference.pts[i] - reference.pts[j]).norm();
            const double dx = (current.pts[i] - current.pts[j]).norm();
            if (da < 1e-15)
                throw std::invalid_argument("ref::bilipschitz_constant: coincident reference markers");
            if (dx < 1e-15) return 0.0;
            b = std::min(b, dx / da);
        }
    }
    return b;
}

VectorField velocity_on_markers(const Curve& c, const KernelSpec& spec) {
    const VectorField dX = derivative(c);
    const double h = c.grid_spacing();
    const double tol = 1e-13 * std::max(1.0, curve_diameter(c));
    VectorField out;
    out.v.resize(c.n);
    for (int i = 0; i < c.n; ++i) {
        KahanSum2 acc;
        for (int j = 0; j < c.n; ++j) {
            const Vec2 d = c.pts[i] - c.pts[j];
            if (d.norm() < tol) continue;
            acc.add(kernel_eval(spec, d) * dot(rot_minus90(d), dX[j]));
        }
        out[i] = acc.value() * h;
    }
    return out;
}

double jet_inequality_sup(const Curve& c, const VectorField& normal_field, double gamma) {
    double sup = 0.0;
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (i == j) continue;
            const Vec2 d = c.pts[j] - c.pts[i];
            const double dist = d.norm();
            if (dist < 1e-15) continue;
            sup = std::max(sup, std::abs(dot(d, normal_field[i])) / std::pow(dist, 1.0 + gamma));
        }
    }
    return sup;
}

}  // namespace pd::ref
