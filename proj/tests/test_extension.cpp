#include <cmath>

#include "doctest.h"
#include "patchdyn/extension.hpp"

using namespace pd;

namespace {

// Probes on a radially scaled copy of the curve, safely away from both the
// unresolved band next to the markers and the outer cutoff.
std::vector<Vec2> collar_probes(const Curve& c, double scale, int count) {
    std::vector<Vec2> out;
    for (int k = 0; k < count; ++k) out.push_back(c.pts[(c.n / count) * k] * scale);
    return out;
}

double fd_divergence(const WhitneyExtension& e, const Vec2& x, double h) {
    const double d1 = (e.field({x.x + h, x.y}).x - e.field({x.x - h, x.y}).x) / (2.0 * h);
    const double d2 = (e.field({x.x, x.y + h}).y - e.field({x.x, x.y - h}).y) / (2.0 * h);
    return d1 + d2;
}

}  // namespace

TEST_CASE("tangent jet fields") {
    const Curve c = make_ellipse(2.0, 1.0, 64);
    const FrameField fr = tangent_normal(c);
    const Jet j = make_tangent_jet(c, fr.tangent, 0.5);
    REQUIRE(static_cast<int>(j.points.size()) == c.n);
    for (int i = 0; i < c.n; ++i)
        CHECK((j.gradients[i] - rot_plus90(fr.tangent[i])).norm() < 1e-14);
    CHECK(j.jet_constant > 0.0);
    CHECK(std::isfinite(j.jet_constant));
}

TEST_CASE("normal-chord ratio on the unit circle") {
    const Curve c = make_circle(1.0, 256);
    const FrameField fr = tangent_normal(c);
    for (double g : {0.25, 0.5, 0.75}) {
        const JetVerifyResult r = jet_constant_verify(c, fr.normal, g);
        CHECK(r.ok);
        CHECK(std::abs(r.empirical_sup - std::pow(2.0, -g)) < 1e-3);
        CHECK(std::abs(r.holder_norm - std::pow(2.0, 1.0 - g)) < 1e-3);
        CHECK(std::abs(r.ratio - 0.5) < 1e-3);
        CHECK(r.bound_A == doctest::Approx(std::pow(2.0, 3.0 + 0.5 * g)));
        CHECK(r.ratio <= r.bound_A);
    }
}

TEST_CASE("jet verification rejects a non-normal field") {
    // fine grid: the tangential chord ratio grows like d^{-gamma} and crosses
    // the admissible bound
    const Curve c = make_circle(1.0, 2048);
    const FrameField fr = tangent_normal(c);
    CHECK_THROWS(jet_constant_verify(c, fr.tangent, 0.5));
}

TEST_CASE("extension reproduces the jet at the markers") {
    const Curve c = make_ellipse(2.0, 1.0, 128);
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    for (int i = 0; i < c.n; ++i) {
        const auto [phi, grad] = ext.eval(c.pts[i]);
        CHECK(std::abs(phi) < 1e-10);
        CHECK((grad - rot_plus90(fr.tangent[i])).norm() < 1e-6);
        CHECK((ext.field(c.pts[i]) - fr.tangent[i]).norm() < 1e-6);
    }
}

TEST_CASE("reported gradient is the derivative of the evaluated sum") {
    const Curve c = make_ellipse(2.0, 1.0, 128);
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    const double h = 1e-6;
    for (const Vec2& x : collar_probes(c, 1.25, 16)) {
        const auto [phi, grad] = ext.eval(x);
        const double fx = (ext.eval({x.x + h, x.y}).first - ext.eval({x.x - h, x.y}).first) / (2.0 * h);
        const double fy = (ext.eval({x.x, x.y + h}).first - ext.eval({x.x, x.y - h}).first) / (2.0 * h);
        CHECK(std::abs(grad.x - fx) < 1e-6 * (1.0 + std::abs(grad.x)));
        CHECK(std::abs(grad.y - fy) < 1e-6 * (1.0 + std::abs(grad.y)));
        (void)phi;
    }
}

TEST_CASE("stream field is divergence free on the collar") {
    const Curve c = make_ellipse(2.0, 1.0, 128);
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    for (double scale : {0.6, 1.25})
        for (const Vec2& x : collar_probes(c, scale, 32))
            CHECK(std::abs(fd_divergence(ext, x, 1e-5)) < 1e-5);
}

TEST_CASE("bounded overlap and compact support") {
    const Curve c = make_ellipse(2.0, 1.0, 128);
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    CHECK(ext.n_cells() > 0);
    for (const Vec2& x : collar_probes(c, 1.3, 16)) CHECK(ext.overlap_at(x) <= 32);
    // zero beyond the outer cutoff
    const auto [phi, grad] = ext.eval({50.0, 50.0});
    CHECK(phi == 0.0);
    CHECK(grad.norm() == 0.0);
    CHECK(ext.field({50.0, 50.0}).norm() == 0.0);
}
