#include "patchdyn/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pd {

namespace {

void check_n(int n) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("curve: n_markers must be even and >= 16");
}

void check_simple_or_throw(const Curve& c, const char* what) {
    if (!is_simple(c))
        throw std::invalid_argument(std::string(what) + ": parameters produce a self-intersecting curve");
}

// Proper segment intersection test, shared endpoints excluded by the caller.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
    const double d1 = cross(q2 - q1, p1 - q1);
    const double d2 = cross(q2 - q1, p2 - q1);
    const double d3 = cross(p2 - p1, q1 - p1);
    const double d4 = cross(p2 - p1, q2 - p1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

Curve make_circle(double radius, int n, double gamma) {
    check_n(n);
    if (radius <= 0.0) throw std::invalid_argument("circle: radius must be positive");
    Curve c;
    c.n = n;
    c.gamma = gamma;
    c.pts.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = c.theta(i);
        c.pts[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return c;
}

Curve make_ellipse(double a, double b, int n, double gamma) {
    check_n(n);
    if (!(a >= b && b > 0.0))
        throw std::invalid_argument("ellipse: need a >= b > 0");
    Curve c;
    c.n = n;
    c.gamma = gamma;
    c.pts.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = c.theta(i);
        c.pts[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return c;
}

Curve make_perturbed_circle(double eps, int m, int n, double gamma) {
    check_n(n);
    if (m < 1) throw std::invalid_argument("perturbed_circle: m must be >= 1");
    if (std::abs(eps) >= 1.0)
        throw std::invalid_argument(
            "perturbed_circle: need |eps| < 1 to keep the radius positive");
    Curve c;
    c.n = n;
    c.gamma = gamma;
    c.pts.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = c.theta(i);
        const double r = 1.0 + eps * std::cos(m * t);
        c.pts[i] = {r * std::cos(t), r * std::sin(t)};
    }
    check_simple_or_throw(c, "perturbed_circle");
    return c;
}

Curve preset_shape(Preset p, const ShapeParams& sp, int n, double gamma) {
    switch (p) {
        case Preset::circle: return make_circle(sp.radius, n, gamma);
        case Preset::ellipse: return make_ellipse(sp.a, sp.b, n, gamma);
        case Preset::perturbed_circle: return make_perturbed_circle(sp.eps, sp.m, n, gamma);
    }
    throw std::invalid_argument("preset_shape: unknown preset");
}

VectorField spectral_derivative(const VectorField& f) {
    const int n = f.size();
    check_n(n);
    const double h = 2.0 * kPi / n;
    // Toeplitz differentiation weights for the uniform periodic grid (even n):
    // w_m = 0.5 * (-1)^m * cot(m h / 2), w_0 = 0.
    std::vector<double> w(n, 0.0);
    for (int m = 1; m < n; ++m) {
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        w[m] = 0.5 * sgn / std::tan(0.5 * m * h);
    }
    VectorField d;
    d.v.resize(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        KahanSum2 acc;
        for (int j = 0; j < n; ++j) {
            int m = i - j;
            if (m == 0) continue;
            if (m < 0) m += n;
            // Antisymmetric weights: w_{n-m} = -w_m for even n.
            acc.add(w[m] * f[j]);
        }
        d[i] = acc.value();
    }
    return d;
}

VectorField derivative(const Curve& c) {
    VectorField f;
    f.v = c.pts;
    return spectral_derivative(f);
}

FrameField tangent_normal(const Curve& c) {
    const VectorField d = derivative(c);
    FrameField fr;
    fr.tangent.v.resize(c.n);
    fr.normal.v.resize(c.n);
    for (int i = 0; i < c.n; ++i) {
        const double len = d[i].norm();
        if (len < 1e-12)
            throw std::runtime_error("tangent_normal: degenerate parametrization (|dX/dtheta| ~ 0)");
        fr.tangent[i] = d[i] / len;
        fr.normal[i] = rot_minus90(fr.tangent[i]);
    }
    return fr;
}

double holder_seminorm(const VectorField& f, double gamma) {
    const int n = f.size();
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("holder_seminorm: gamma must lie in (0,1)");
    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        const double ti = 2.0 * kPi * i / n;
        for (int j = i + 1; j < n; ++j) {
            const double tj = 2.0 * kPi * j / n;
            const double d = 2.0 * std::abs(std::sin(0.5 * (ti - tj)));  // chordal distance on T
            const double r = (f[i] - f[j]).norm() / std::pow(d, gamma);
            if (r > sup) sup = r;
        }
    }
    return sup;
}

double holder_seminorm_ambient(const std::vector<Vec2>& pts, const VectorField& f,
                               double gamma) {
    const int n = static_cast<int>(pts.size());
    if (f.size() != n)
        throw std::invalid_argument("holder_seminorm_ambient: size mismatch");
    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = (pts[i] - pts[j]).norm();
            if (d < 1e-15) continue;
            const double r = (f[i] - f[j]).norm() / std::pow(d, gamma);
            if (r > sup) sup = r;
        }
    }
    return sup;
}

double bilipschitz_constant(const Curve& current, const Curve& reference) {
    if (current.n != reference.n)
        throw std::invalid_argument("bilipschitz_constant: marker counts differ");
    const int n = current.n;
    double b = std::numeric_limits<double>::infinity();
    bool collapsed = false;
    bool bad_ref = false;
#ifdef _OPENMP
#pragma omp parallel for reduction(min : b) reduction(|| : collapsed, bad_ref) schedule(static)
#endif
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double da = (reference.pts[i] - reference.pts[j]).norm();
            const double dx = (current.pts[i] - current.pts[j]).norm();
            if (da < 1e-15) {
                bad_ref = true;
                continue;
            }
            if (dx < 1e-15) {
                collapsed = true;
                continue;
            }
            const double r = dx / da;
            if (r < b) b = r;
        }
    }
    if (bad_ref)
        throw std::invalid_argument("bilipschitz_constant: coincident reference markers");
    if (collapsed) return 0.0;
    return b;
}

double area(const Curve& c) {
    const VectorField d = derivative(c);
    KahanSum acc;
    for (int i = 0; i < c.n; ++i)
        acc.add(cross(c.pts[i], d[i]));
    return 0.5 * acc.value() * c.grid_spacing();
}

double curve_diameter(const Curve& c) {
    double diam = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : diam) schedule(static)
#endif
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j)
            diam = std::max(diam, (c.pts[i] - c.pts[j]).norm());
    return diam;
}

Vec2 curve_centroid_of_markers(const Curve& c) {
    KahanSum2 acc;
    for (const auto& p : c.pts) acc.add(p);
    return acc.value() / static_cast<double>(c.n);
}

double min_marker_gap(const Curve& c) {
    double g = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.n; ++i)
        g = std::min(g, (c.pts[(i + 1) % c.n] - c.pts[i]).norm());
    return g;
}

double mean_marker_gap(const Curve& c) {
    KahanSum acc;
    for (int i = 0; i < c.n; ++i)
        acc.add((c.pts[(i + 1) % c.n] - c.pts[i]).norm());
    return acc.value() / c.n;
}

bool is_simple(const Curve& c) {
    const int n = c.n;
    for (int i = 0; i < n; ++i) {
        const Vec2& p1 = c.pts[i];
        const Vec2& p2 = c.pts[(i + 1) % n];
        if ((p2 - p1).norm() < 1e-15) return false;
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through wrap
            const Vec2& q1 = c.pts[j];
            const Vec2& q2 = c.pts[(j + 1) % n];
            if (segments_intersect(p1, p2, q1, q2)) return false;
        }
    }
    return true;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
    const int n = static_cast<int>(poly.size());
    bool inside = false;
    for (int i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xcross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xcross) inside = !inside;
        }
    }
    return inside;
}

// ---- periodic cubic spline ------------------------------------------------

namespace {

// Second derivatives of the natural periodic cubic spline on a uniform grid,
// by cyclic tridiagonal solve (Sherman-Morrison).
std::vector<double> periodic_spline_m(const std::vector<double>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        const double fm = f[(i + n - 1) % n];
        const double fp = f[(i + 1) % n];
        rhs[i] = 6.0 * (fm - 2.0 * f[i] + fp) / (h * h);
    }
    // System: m_{i-1} + 4 m_i + m_{i+1} = rhs_i, cyclic.
    const double diag = 4.0, off = 1.0;
    auto solve_tridiag = [&](std::vector<double> d, const std::vector<double>& r) {
        // d holds the modified diagonal (first/last entries), Thomas algorithm.
        const int nn = static_cast<int>(r.size());
        std::vector<double> cp(nn), x(nn);
        cp[0] = off / d[0];
        x[0] = r[0] / d[0];
        for (int i = 1; i < nn; ++i) {
            const double m = d[i] - off * cp[i - 1];
            cp[i] = off / m;
            x[i] = (r[i] - off * x[i - 1]) / m;
        }
        for (int i = nn - 2; i >= 0; --i) x[i] -= cp[i] * x[i + 1];
        return x;
    };
    // Sherman-Morrison for the cyclic wrap terms.
    const double alpha = -diag;
    std::vector<double> d(n, diag);
    d[0] = diag - alpha;
    d[n - 1] = diag - off * off / alpha;
    std::vector<double> u(n, 0.0);
    u[0] = alpha;
    u[n - 1] = off;
    const std::vector<double> y = solve_tridiag(d, rhs);
    const std::vector<double> z = solve_tridiag(d, u);
    const double vy = y[0] + (off / alpha) * y[n - 1];
    const double vz = 1.0 + z[0] + (off / alpha) * z[n - 1];
    std::vector<double> m(n);
    for (int i = 0; i < n; ++i) m[i] = y[i] - (vy / vz) * z[i];
    return m;
}

struct PeriodicSpline {
    std::vector<double> f, m;
    double h = 0.0;
    int n = 0;

    void build(const std::vector<double>& samples, double spacing) {
        f = samples;
        h = spacing;
        n = static_cast<int>(samples.size());
        m = periodic_spline_m(f, h);
    }

    double eval(double t) const {
        const double period = n * h;
        double tt = std::fmod(t, period);
        if (tt < 0) tt += period;
        int i = static_cast<int>(tt / h);
        if (i >= n) i = n - 1;
        const int ip = (i + 1) % n;
        const double a = (h * (i + 1) - tt) / h;
        const double b = (tt - h * i) / h;
        return a * f[i] + b * f[ip] +
               ((a * a * a - a) * m[i] + (b * b * b - b) * m[ip]) * h * h / 6.0;
    }

    double eval_deriv(double t) const {
        const double period = n * h;
        double tt = std::fmod(t, period);
        if (tt < 0) tt += period;
        int i = static_cast<int>(tt / h);
        if (i >= n) i = n - 1;
        const int ip = (i + 1) % n;
        const double a = (h * (i + 1) - tt) / h;
        const double b = (tt - h * i) / h;
        return (f[ip] - f[i]) / h +
               ((-3.0 * a * a + 1.0) * m[i] + (3.0 * b * b - 1.0) * m[ip]) * h / 6.0;
    }
};

}  // namespace

Curve trig_refine(const Curve& c, int factor) {
    if (factor < 1) throw std::invalid_argument("trig_refine: factor must be >= 1");
    if (factor == 1) return c;
    const int n = c.n;
    const int m = n * factor;
    Curve out;
    out.n = m;
    out.gamma = c.gamma;
    out.pts.resize(m);
    // Periodic sinc interpolation for even n: S(phi) = sin(n phi/2)/(n tan(phi/2)).
    for (int k = 0; k < m; ++k) {
        if (k % factor == 0) {
            out.pts[k] = c.pts[k / factor];
            continue;
        }
        const double t = 2.0 * kPi * k / m;
        KahanSum2 acc;
        for (int j = 0; j < n; ++j) {
            const double phi = t - c.theta(j);
            const double s = std::sin(0.5 * n * phi) / (n * std::tan(0.5 * phi));
            acc.add(c.pts[j] * s);
        }
        out.pts[k] = acc.value();
    }
    return out;
}

Curve arc_resample(const Curve& c, int n_new) {
    check_n(n_new);
    std::vector<double> xs(c.n), ys(c.n);
    for (int i = 0; i < c.n; ++i) {
        xs[i] = c.pts[i].x;
        ys[i] = c.pts[i].y;
    }
    PeriodicSpline sx, sy;
    sx.build(xs, c.grid_spacing());
    sy.build(ys, c.grid_spacing());

    // Cumulative arclength on a dense parameter grid.
    const int dense = 32 * c.n;
    const double dh = 2.0 * kPi / dense;
    std::vector<double> cum(dense + 1, 0.0);
    for (int i = 0; i < dense; ++i) {
        const double tm = (i + 0.5) * dh;
        const double sp = std::hypot(sx.eval_deriv(tm), sy.eval_deriv(tm));
        cum[i + 1] = cum[i] + sp * dh;
    }
    const double total = cum[dense];

    Curve out;
    out.n = n_new;
    out.gamma = c.gamma;
    out.pts.resize(n_new);
    int seg = 0;
    for (int k = 0; k < n_new; ++k) {
        const double target = total * k / n_new;
        while (seg < dense - 1 && cum[seg + 1] < target) ++seg;
        const double frac = (target - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300);
        const double t = (seg + frac) * dh;
        out.pts[k] = {sx.eval(t), sy.eval(t)};
    }
    if (!is_simple(out))
        throw std::runtime_error("arc_resample: resampled curve self-intersects");
    return out;
}

void write_curve_csv(const Curve& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
    out.precision(17);
    out << "theta,x,y\n";
    for (int i = 0; i < c.n; ++i)
        out << c.theta(i) << "," << c.pts[i].x << "," << c.pts[i].y << "\n";
}

Curve read_curve_csv(const std::string& path, double gamma) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_curve_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_curve_csv: empty file " + path);
    Curve c;
    c.gamma = gamma;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        double t, x, y;
        char comma;
        if (!(ss >> t >> comma >> x >> comma >> y))
            throw std::runtime_error("read_curve_csv: bad row in " + path + ": " + line);
        c.pts.push_back({x, y});
    }
    c.n = static_cast<int>(c.pts.size());
    check_n(c.n);
    return c;
}

}  // namespace pd
