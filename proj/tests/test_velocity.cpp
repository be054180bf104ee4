#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "patchdyn/velocity.hpp"

using namespace pd;

TEST_CASE("disc biot-savart: rigid rotation on the markers") {
    const Curve c = make_circle(1.0, 128);
    const KernelSpec bs = KernelSpec::biot_savart();
    const VectorField v = velocity_on_markers(c, bs);
    for (int i = 0; i < c.n; ++i)
        CHECK((v[i] - rot_plus90(c.pts[i]) * 0.5).norm() < 1e-10);
}

TEST_CASE("disc biot-savart: interior and exterior closed forms") {
    const Curve c = make_circle(1.0, 256);
    const KernelSpec bs = KernelSpec::biot_savart();
    for (const Vec2 z : {Vec2{0.3, 0.2}, Vec2{-0.5, 0.1}, Vec2{1.5, 0.4}, Vec2{0.0, -2.0}})
        CHECK((boundary_velocity(c, bs, z) - oracle::disc_bs_velocity(z)).norm() < 1e-10);
}

TEST_CASE("disc grad_n: radial expansion field") {
    const Curve c = make_circle(1.0, 256);
    const KernelSpec gn = KernelSpec::grad_n();
    for (const Vec2 z : {Vec2{0.3, 0.2}, Vec2{-0.4, -0.4}, Vec2{1.5, 0.4}})
        CHECK((boundary_velocity(c, gn, z) - oracle::disc_gradn_velocity(z)).norm() < 1e-10);
    const VectorField v = velocity_on_markers(c, gn);
    for (int i = 0; i < c.n; ++i) CHECK((v[i] - c.pts[i] * 0.5).norm() < 1e-10);
}

TEST_CASE("ellipse biot-savart: interior rotation field") {
    const double a = 2.0, b = 1.0;
    const Curve c = make_ellipse(a, b, 256);
    const KernelSpec bs = KernelSpec::biot_savart();
    for (const Vec2 z : {Vec2{0.0, 0.0}, Vec2{0.8, 0.3}, Vec2{-1.2, -0.4}})
        CHECK((boundary_velocity(c, bs, z) - oracle::ellipse_bs_velocity_inside(a, b, z))
                  .norm() < 1e-9);
    const VectorField v = velocity_on_markers(c, bs);
    for (int i = 0; i < c.n; i += 16)
        CHECK((v[i] - oracle::ellipse_bs_velocity_inside(a, b, c.pts[i])).norm() < 1e-8);
}

TEST_CASE("boundary integral agrees with the polar area integral") {
    const Curve c = make_perturbed_circle(0.08, 3, 128);
    const KernelSpec mix = KernelSpec::linear_combination(
        {{0.6, KernelSpec::biot_savart()}, {0.4, KernelSpec::grad_n()}});
    for (const Vec2 z : {Vec2{0.2, 0.1}, Vec2{-0.3, 0.4}, Vec2{1.8, 0.5}}) {
        const Vec2 vb = boundary_velocity(c, mix, z);
        const Vec2 va = oracle::area_velocity(c, mix, z);
        CHECK((vb - va).norm() < 1e-4);
    }
}

TEST_CASE("jacobian at interior points") {
    const Curve disc = make_circle(1.0, 256);
    const KernelSpec bs = KernelSpec::biot_savart();
    const Mat2 gd = grad_velocity_offcurve(disc, bs, {0.2, 0.1});
    CHECK((gd - Mat2(0.0, -0.5, 0.5, 0.0)).maxabs() < 1e-8);

    const Curve ell = make_ellipse(2.0, 1.0, 256);
    const Mat2 ge = grad_velocity_offcurve(ell, bs, {0.5, 0.2});
    CHECK((ge - Mat2(0.0, -2.0 / 3.0, 1.0 / 3.0, 0.0)).maxabs() < 1e-8);
    CHECK(std::abs(ge.opnorm() - 2.0 / 3.0) < 1e-8);

    CHECK_THROWS(grad_velocity_offcurve(disc, bs, {0.9999, 0.0}));
}

TEST_CASE("sup grad velocity near the closed forms") {
    const KernelSpec bs = KernelSpec::biot_savart();
    const double sd = sup_grad_velocity(make_circle(1.0, 128), bs);
    CHECK(sd > 0.45);
    CHECK(sd < 0.60);
    const double se = sup_grad_velocity(make_ellipse(2.0, 1.0, 256), bs);
    CHECK(se > 0.6);
    CHECK(se < 1.1);
}

TEST_CASE("grad-entry profiles") {
    const KernelSpec bs = KernelSpec::biot_savart();
    // d1 k1 of biot-savart has angular profile sin(2t)/(2 pi).
    const EvenKernel e11 = EvenKernel::from_grad_entry(bs, 1, 1);
    e11.check_valid();
    for (double t : {0.3, 1.1, 2.9})
        CHECK(std::abs(e11.eval_angular(t) - std::sin(2.0 * t) / (2.0 * kPi)) < 1e-10);
    // consistency with the pointwise jacobian at r = 2
    const EvenKernel e12 = EvenKernel::from_grad_entry(bs, 1, 2);
    const double t = 0.7, r = 2.0;
    const Mat2 g = kernel_grad(bs, {r * std::cos(t), r * std::sin(t)});
    CHECK(std::abs(e11.eval_angular(t) / (r * r) - g.a11) < 1e-12);
    CHECK(std::abs(e12.eval_angular(t) / (r * r) - g.a12) < 1e-12);

    const EvenKernel q = EvenKernel::quadrupole();
    q.check_valid();
    CHECK(std::abs(q.eval_angular(0.0) - 1.0) < 1e-14);
    CHECK(std::abs(q.eval_angular(kPi / 2.0) + 1.0) < 1e-14);

    // odd profile is rejected
    EvenKernel bad = q;
    bad.profile.sin_c = {0.0, 1.0};
    CHECK_THROWS(bad.check_valid());
}

TEST_CASE("quadrupole truncations vanish inside the disc") {
    // The angular mean of cos(2t) is zero, so every annulus centered at x and
    // contained in the disc contributes nothing; for x inside the unit disc
    // the truncated integral is 0 for all eps < 1 - |x|.
    const Curve c = make_circle(1.0, 512);
    const EvenKernel q = EvenKernel::quadrupole();
    for (const Vec2 x : {Vec2{0.0, 0.0}, Vec2{0.5, 0.0}, Vec2{0.2, -0.3}}) {
        TstarConfig cfg;
        cfg.eps_max = 0.9 * (1.0 - x.norm());
        cfg.eps_min = 1e-4;
        const TruncationSweep s = tstar(c, q, x, cfg);
        REQUIRE(static_cast<int>(s.value.size()) == cfg.n_eps);
        for (double v : s.value) CHECK(std::abs(v) < 1e-6);
    }
}

TEST_CASE("tstar matches a brute-force membership quadrature") {
    const Curve c = make_ellipse(2.0, 1.0, 64);
    const EvenKernel K = EvenKernel::from_grad_entry(KernelSpec::biot_savart(), 1, 1);
    const Vec2 x{1.0, 0.3};
    const double eps = 0.3;
    TstarConfig cfg;
    cfg.eps_max = eps;
    cfg.eps_min = eps * 0.999;
    cfg.n_eps = 2;
    const TruncationSweep s = tstar(c, K, x, cfg);
    const double brute = oracle::membership_truncated_integral(c, K, x, eps);
    CHECK(std::abs(s.value.front() - brute) < 2e-2);
}

TEST_CASE("sweep bookkeeping and the log bound") {
    const Curve c = make_perturbed_circle(0.1, 3, 128);
    const EvenKernel K = EvenKernel::from_grad_entry(KernelSpec::biot_savart(), 2, 1);
    const TruncationSweep s = tstar(c, K, c.pts[5]);
    REQUIRE(!s.eps.empty());
    for (size_t i = 1; i < s.eps.size(); ++i) {
        CHECK(s.eps[i] < s.eps[i - 1]);
        CHECK(s.running_sup[i] >= s.running_sup[i - 1]);
    }
    CHECK(std::isfinite(s.sup()));
    CHECK(s.sup() >= 0.0);

    CHECK(log_bound_rhs(kPi, 0.5, 2.0) == doctest::Approx(2.0));  // log+ clamps
    const double q = 10.0;
    CHECK(log_bound_rhs(kPi, q, 3.0) ==
          doctest::Approx(3.0 * (1.0 + std::log(std::sqrt(kPi) * q))));
}
