#pragma once

#include <vector>

#include "patchdyn/curve.hpp"
#include "patchdyn/extension.hpp"
#include "patchdyn/kernel.hpp"

namespace pd {

// Area quadrature over the patch: fan triangulation from the marker centroid,
// uniform refinement, 6-point degree-4 rule per triangle.
struct PatchQuadrature {
    std::vector<Vec2> nodes;
    std::vector<double> weights;
    double total_area = 0.0;
    int n_triangles = 0;
};

// boundary_factor refines the polygon boundary by trigonometric interpolation
// before fanning, so the triangle areas track the smooth patch area.
PatchQuadrature fan_quadrature(const Curve& c, int refine = 1, int boundary_factor = 8);

// grad v (x) applied to the unit tangent, per marker, by the chain rule:
// (d/dtheta) v(X(theta)) = grad v . X', normalized by |X'|.
VectorField direct_tangential(const Curve& c, const KernelSpec& spec);

struct CommutatorParams {
    int refine = 1;        // triangle refinement level of the far part
    int boundary_factor = 8;
    int near_angles = 96;  // polar rays of the near part
    int near_radial = 12;  // radial Gauss nodes per inside interval
    double rp_gaps = 3.0;  // singular-patch radius in mean marker gaps
};

// integral over D of grad k (x - y) (g(x) - g(y)) dy at marker x, with a
// smooth near/far splitting: triangle quadrature away from x, graded polar
// quadrature on the disc around x.
Vec2 commutator_integral(const Curve& c, const KernelSpec& spec,
                         const WhitneyExtension& ext, int marker,
                         const CommutatorParams& p = {});

// Same, with the patch quadrature and the g values at its nodes precomputed
// (they are shared across markers).
Vec2 commutator_integral(const Curve& c, const KernelSpec& spec,
                         const WhitneyExtension& ext, int marker,
                         const PatchQuadrature& pq, const std::vector<Vec2>& g_nodes,
                         const CommutatorParams& p);

struct Lemma3Report {
    std::vector<int> markers;
    std::vector<double> rel_discrepancy;
    double max_rel_discrepancy = 0.0;
    double commutator_holder = 0.0;  // sampled ambient seminorm of the integral side
    double bound_shape = 0.0;        // (1 + sup|grad v|) * ||tau||_gamma
    double fitted_c = 0.0;           // commutator_holder / bound_shape
    double tolerance = 5e-2;
    bool pass = false;
};

struct Lemma3Params {
    int stride = 4;
    double tolerance = 5e-2;
    CommutatorParams quad;
};

Lemma3Report lemma3_check(const Curve& c, const KernelSpec& spec, double gamma,
                          const Lemma3Params& p = {});

}  // namespace pd
