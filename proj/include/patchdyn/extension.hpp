#pragma once

#include <utility>
#include <vector>

#include "patchdyn/curve.hpp"

namespace pd {

// First-order jet on the curve: value 0 and gradient (-tau2, tau1) at each
// marker (the stream-function boundary data of the divergence-free extension).
struct Jet {
    std::vector<Vec2> points;
    std::vector<Vec2> gradients;
    double gamma = 0.5;
    double jet_constant = 0.0;  // sup of Whitney compatibility ratios
};

Jet make_tangent_jet(const Curve& c, const VectorField& tangent, double gamma);

struct JetVerifyResult {
    double empirical_sup = 0.0;  // sup |(y-x).N(x)| / |y-x|^{1+gamma}
    double holder_norm = 0.0;    // ambient-distance seminorm of N on the curve
    double ratio = 0.0;
    double bound_A = 0.0;        // 2^{3 + gamma/2}
    bool ok = false;
};

// Double pair scan of the jet inequality for a normal field on the curve.
// Throws if ratio > bound_A (a bug or a non-normal input field).
JetVerifyResult jet_constant_verify(const Curve& c, const VectorField& normal_field,
                                    double gamma);

struct WhitneyParams {
    int max_depth = 12;
    // Leaf admission: side <= whitney_factor * dist(center, markers).
    double whitney_factor = 0.5;
    // Collar width as multiple of curve diameter (cubes beyond are dropped).
    double collar_rel = 1.0;
    // Stop refining below min_side_rel * mean marker gap.
    double min_side_rel = 0.5;
    int max_overlap = 32;
};

// Stream-function extension of the tangent jet: dyadic squares at
// distance-proportional scale, per-square first-order polynomial anchored at a
// nearest marker, smooth partition of unity, smooth radial cut to zero beyond
// the collar.  Evaluation inside the unresolved band next to the curve falls
// back to the polynomial of the closest boundary point (jet values reproduced
// exactly at markers).
class WhitneyExtension {
  public:
    WhitneyExtension(const Curve& c, const VectorField& tangent, double gamma,
                     const WhitneyParams& params = {});

    // (phi, grad phi); the gradient is the exact derivative of the evaluated sum.
    std::pair<double, Vec2> eval(const Vec2& x) const;

    // g = (d2 phi, -d1 phi).
    Vec2 field(const Vec2& x) const;

    int n_cells() const { return static_cast<int>(cells_.size()); }
    int overlap_at(const Vec2& x) const;  // number of bumps covering x
    double band_width() const { return band_; }
    double collar_width() const { return collar_; }
    double gamma() const { return gamma_; }

  private:
    struct Cell {
        Vec2 center;
        double half = 0.0;
        int marker = -1;  // anchor marker index
    };
    struct Node {
        Vec2 center;
        double half = 0.0;
        int child0 = -1;  // four children contiguous, or -1 for leaf/pruned
        int cell = -1;    // index into cells_ when this node is a kept leaf
    };

    void build(const WhitneyParams& params);
    double dist_to_markers(const Vec2& x, int* idx = nullptr) const;
    void gather(int node, const Vec2& x, std::vector<int>& out) const;
    std::pair<double, Vec2> eval_band(const Vec2& x) const;

    std::vector<Vec2> pts_;
    std::vector<Vec2> grads_;  // jet gradients at markers
    double gamma_ = 0.5;
    double band_ = 0.0;
    double collar_ = 0.0;
    Vec2 centroid_;
    double cut_r0_ = 0.0, cut_r1_ = 0.0;
    std::vector<Cell> cells_;
    std::vector<Node> nodes_;
};

inline WhitneyExtension whitney_extend(const Curve& c, const VectorField& tangent,
                                       double gamma, const WhitneyParams& p = {}) {
    return WhitneyExtension(c, tangent, gamma, p);
}

inline std::pair<double, Vec2> eval_extension(const WhitneyExtension& e, const Vec2& x) {
    return e.eval(x);
}

inline Vec2 divergence_free_field(const WhitneyExtension& e, const Vec2& x) {
    return e.field(x);
}

}  // namespace pd
