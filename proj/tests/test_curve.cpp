#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "doctest.h"
#include "patchdyn/curve.hpp"

using namespace pd;

TEST_CASE("circle geometry") {
    const Curve c = make_circle(1.0, 128);
    CHECK(c.n == 128);
    CHECK(std::abs(area(c) - kPi) < 1e-10);
    CHECK(std::abs(curve_diameter(c) - 2.0) < 1e-12);
    CHECK(curve_centroid_of_markers(c).norm() < 1e-14);
    const double gap = 2.0 * std::sin(kPi / c.n);
    CHECK(std::abs(min_marker_gap(c) - gap) < 1e-13);
    CHECK(std::abs(mean_marker_gap(c) - gap) < 1e-13);
    CHECK(is_simple(c));
}

TEST_CASE("scaled circle area") {
    const Curve c = make_circle(2.5, 64);
    CHECK(std::abs(area(c) - kPi * 2.5 * 2.5) < 1e-10);
}

TEST_CASE("ellipse and perturbed-circle areas") {
    CHECK(std::abs(area(make_ellipse(2.0, 1.0, 128)) - 2.0 * kPi) < 1e-10);
    const double eps = 0.1;
    const Curve p = make_perturbed_circle(eps, 3, 128);
    CHECK(std::abs(area(p) - kPi * (1.0 + 0.5 * eps * eps)) < 1e-10);
}

TEST_CASE("spectral derivative exact on band-limited fields") {
    const int n = 64;
    VectorField f;
    f.v.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        f[i] = {std::cos(3.0 * t), std::sin(2.0 * t)};
    }
    const VectorField df = spectral_derivative(f);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        CHECK(std::abs(df[i].x + 3.0 * std::sin(3.0 * t)) < 1e-11);
        CHECK(std::abs(df[i].y - 2.0 * std::cos(2.0 * t)) < 1e-11);
    }
}

TEST_CASE("circle derivative and frame") {
    const Curve c = make_circle(1.5, 64);
    const VectorField dX = derivative(c);
    const FrameField fr = tangent_normal(c);
    for (int i = 0; i < c.n; ++i) {
        const double t = c.theta(i);
        CHECK(std::abs(dX[i].x + 1.5 * std::sin(t)) < 1e-11);
        CHECK(std::abs(dX[i].y - 1.5 * std::cos(t)) < 1e-11);
        CHECK(std::abs(fr.tangent[i].norm() - 1.0) < 1e-12);
        // outward normal
        CHECK(dot(fr.normal[i], c.pts[i]) > 0.9);
        CHECK(std::abs(dot(fr.normal[i], fr.tangent[i])) < 1e-12);
    }
}

TEST_CASE("holder seminorm against the rotation-field closed form") {
    // f(theta) = e^{i theta}: |f_i - f_j| equals the chordal distance, so the
    // seminorm is sup d^{1-gamma} = 2^{1-gamma}.
    const int n = 256;
    VectorField f;
    f.v.resize(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        f[i] = {std::cos(t), std::sin(t)};
    }
    for (double g : {0.25, 0.5, 0.75})
        CHECK(std::abs(holder_seminorm(f, g) - std::pow(2.0, 1.0 - g)) < 1e-12);
}

TEST_CASE("ambient holder seminorm on the unit circle") {
    const Curve c = make_circle(1.0, 256);
    VectorField f;
    f.v = c.pts;
    for (double g : {0.25, 0.5, 0.75})
        CHECK(std::abs(holder_seminorm_ambient(c.pts, f, g) - std::pow(2.0, 1.0 - g)) <
              1e-12);
}

TEST_CASE("bilipschitz constant") {
    const Curve ref = make_circle(1.0, 64);
    CHECK(std::abs(bilipschitz_constant(ref, ref) - 1.0) < 1e-14);
    Curve scaled = ref;
    for (auto& p : scaled.pts) p *= 2.0;
    CHECK(std::abs(bilipschitz_constant(scaled, ref) - 2.0) < 1e-13);
    Curve collapsed = ref;
    collapsed.pts[1] = collapsed.pts[0];
    CHECK(bilipschitz_constant(collapsed, ref) == 0.0);
    Curve other = make_circle(1.0, 32);
    CHECK_THROWS(bilipschitz_constant(other, ref));
}

TEST_CASE("point in polygon and simplicity") {
    const Curve c = make_ellipse(2.0, 1.0, 64);
    CHECK(point_in_polygon(c.pts, {0.0, 0.0}));
    CHECK(point_in_polygon(c.pts, {1.5, 0.3}));
    CHECK(!point_in_polygon(c.pts, {0.0, 1.5}));
    CHECK(!point_in_polygon(c.pts, {3.0, 0.0}));

    Curve eight = make_circle(1.0, 32);
    // fold half the markers across the y axis to force a crossing
    for (int i = 0; i < 16; ++i) eight.pts[i].x = -eight.pts[i].x - 0.5;
    CHECK(!is_simple(eight));
}

TEST_CASE("trig refine lands on the smooth curve") {
    const Curve c = make_ellipse(2.0, 1.0, 32);
    const Curve f = trig_refine(c, 4);
    CHECK(f.n == 128);
    for (int i = 0; i < f.n; ++i) {
        const double t = f.theta(i);
        CHECK((f.pts[i] - Vec2{2.0 * std::cos(t), std::sin(t)}).norm() < 1e-12);
    }
    // original markers preserved exactly
    for (int i = 0; i < c.n; ++i) CHECK((f.pts[4 * i] - c.pts[i]).norm() < 1e-13);
}

TEST_CASE("arclength resampling equalizes gaps and keeps the area") {
    const Curve c = make_ellipse(2.0, 1.0, 128);
    const Curve r = arc_resample(c, 128);
    double gmin = 1e300, gmax = 0.0;
    for (int i = 0; i < r.n; ++i) {
        const double g = (r.pts[(i + 1) % r.n] - r.pts[i]).norm();
        gmin = std::min(gmin, g);
        gmax = std::max(gmax, g);
    }
    CHECK(gmax / gmin - 1.0 < 1e-3);
    CHECK(std::abs(area(r) - area(c)) < 1e-6);
    CHECK_THROWS(arc_resample(c, 7));
}

TEST_CASE("curve csv round trip") {
    const Curve c = make_perturbed_circle(0.05, 3, 64, 0.75);
    const std::string path = "curve_rt.csv";
    write_curve_csv(c, path);
    const Curve r = read_curve_csv(path, 0.75);
    std::remove(path.c_str());
    REQUIRE(r.n == c.n);
    for (int i = 0; i < c.n; ++i) {
        CHECK(r.pts[i].x == c.pts[i].x);
        CHECK(r.pts[i].y == c.pts[i].y);
    }
}

TEST_CASE("constructor guards") {
    CHECK_THROWS(make_circle(1.0, 15));   // odd
    CHECK_THROWS(make_circle(1.0, 8));    // too small
    CHECK_THROWS(make_circle(-1.0, 64));  // bad radius
    CHECK_THROWS(make_perturbed_circle(1.1, 3, 64));  // radius crosses zero
}
