#include <cmath>

#include "doctest.h"
#include "patchdyn/commutator.hpp"
#include "patchdyn/velocity.hpp"

using namespace pd;

TEST_CASE("fan quadrature recovers smooth areas") {
    // the defect is the polygon chord deficit, (2 pi / M)^2 / 6 relative for
    // M refined boundary points
    const Curve disc = make_circle(1.0, 128);
    const PatchQuadrature pd0 = fan_quadrature(disc, 1, 32);
    CHECK(std::abs(pd0.total_area - kPi) / kPi < 1e-6);

    const Curve ell = make_ellipse(2.0, 1.0, 128);
    const PatchQuadrature pe = fan_quadrature(ell, 1, 32);
    CHECK(std::abs(pe.total_area - 2.0 * kPi) / (2.0 * kPi) < 1e-6);

    // boundary refinement is what controls the area defect
    const double e8 = std::abs(fan_quadrature(ell, 0, 8).total_area - 2.0 * kPi);
    const double e2 = std::abs(fan_quadrature(ell, 0, 2).total_area - 2.0 * kPi);
    CHECK(e8 < e2);
    CHECK_THROWS(fan_quadrature(ell, -1));
}

TEST_CASE("precomputed and convenience overloads agree exactly") {
    const Curve c = make_ellipse(2.0, 1.0, 64);
    const KernelSpec bs = KernelSpec::biot_savart();
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    const CommutatorParams p;
    const PatchQuadrature pq = fan_quadrature(c, p.refine, p.boundary_factor);
    std::vector<Vec2> g_nodes(pq.nodes.size());
    for (size_t q = 0; q < pq.nodes.size(); ++q) g_nodes[q] = ext.field(pq.nodes[q]);
    const Vec2 a = commutator_integral(c, bs, ext, 3, pq, g_nodes, p);
    const Vec2 b = commutator_integral(c, bs, ext, 3, p);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
}

TEST_CASE("disc rotation: tangential derivative closed form") {
    const Curve c = make_circle(1.0, 128);
    const KernelSpec bs = KernelSpec::biot_savart();
    const VectorField d = direct_tangential(c, bs);
    for (int i = 0; i < c.n; ++i)
        CHECK((d[i] + c.pts[i] * 0.5).norm() < 1e-10);
}

TEST_CASE("commutator integral matches the direct side on the disc") {
    const Curve c = make_circle(1.0, 96);
    const KernelSpec bs = KernelSpec::biot_savart();
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    const VectorField d = direct_tangential(c, bs);
    for (int i : {0, 17, 48}) {
        const Vec2 v = commutator_integral(c, bs, ext, i);
        CHECK((v - d[i]).norm() / d[i].norm() < 5e-2);
    }
}

TEST_CASE("sampled commutator check on the ellipse") {
    const Curve c = make_ellipse(2.0, 1.0, 64);
    const KernelSpec bs = KernelSpec::biot_savart();
    Lemma3Params p;
    p.stride = 8;
    const Lemma3Report rep = lemma3_check(c, bs, 0.5, p);
    CHECK(rep.pass);
    CHECK(rep.max_rel_discrepancy < rep.tolerance);
    CHECK(rep.markers.size() == 8);
    CHECK(rep.commutator_holder > 0.0);
    CHECK(rep.bound_shape > 0.0);
    CHECK(std::isfinite(rep.fitted_c));
}

TEST_CASE("argument guards") {
    const Curve c = make_circle(1.0, 64);
    const KernelSpec bs = KernelSpec::biot_savart();
    const FrameField fr = tangent_normal(c);
    const WhitneyExtension ext(c, fr.tangent, 0.5);
    CHECK_THROWS(commutator_integral(c, bs, ext, -1));
    CHECK_THROWS(commutator_integral(c, bs, ext, 64));
}
