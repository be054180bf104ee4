#include "patchdyn/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pd {

namespace {

double smooth5(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smooth5_deriv(double s) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

// Smooth bump supported on (-1, 1), normalized to 1 at the origin.
double bump(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t2));
}

double bump_deriv(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    const double d = 1.0 - t2;
    return bump(t) * (-2.0 * t / (d * d));
}

// Closest point on the marker polygon: distance, segment index, segment param.
double closest_on_polygon(const std::vector<Vec2>& pts, const Vec2& x, int& seg,
                          double& s_out, Vec2& proj) {
    const int n = static_cast<int>(pts.size());
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2 ab = pts[(i + 1) % n] - a;
        const double len2 = ab.norm2();
        double s = len2 > 0.0 ? dot(x - a, ab) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        const Vec2 p = a + ab * s;
        const double d = (x - p).norm();
        if (d < best) {
            best = d;
            seg = i;
            s_out = s;
            proj = p;
        }
    }
    return best;
}

}  // namespace

Jet make_tangent_jet(const Curve& c, const VectorField& tangent, double gamma) {
    if (tangent.size() != c.n)
        throw std::invalid_argument("make_tangent_jet: field size mismatch");
    Jet j;
    j.points = c.pts;
    j.gamma = gamma;
    j.gradients.resize(c.n);
    for (int i = 0; i < c.n; ++i)
        j.gradients[i] = {-tangent[i].y, tangent[i].x};
    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(static)
#endif
    for (int a = 0; a < c.n; ++a) {
        for (int b = 0; b < c.n; ++b) {
            if (a == b) continue;
            const Vec2 d = j.points[b] - j.points[a];
            const double dist = d.norm();
            if (dist < 1e-15) continue;
            sup = std::max(sup, std::abs(dot(d, j.gradients[a])) / std::pow(dist, 1.0 + gamma));
        }
    }
    j.jet_constant = sup;
    return j;
}

JetVerifyResult jet_constant_verify(const Curve& c, const VectorField& normal_field,
                                    double gamma) {
    if (normal_field.size() != c.n)
        throw std::invalid_argument("jet_constant_verify: field size mismatch");
    for (int i = 0; i < c.n; ++i)
        if (normal_field[i].norm() < 1e-14)
            throw std::invalid_argument("jet_constant_verify: vanishing normal field");
    JetVerifyResult r;
    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for reduction(max : sup) schedule(static)
#endif
    for (int i = 0; i < c.n; ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (i == j) continue;
            const Vec2 d = c.pts[j] - c.pts[i];
            const double dist = d.norm();
            if (dist < 1e-15) continue;
            sup = std::max(sup, std::abs(dot(d, normal_field[i])) / std::pow(dist, 1.0 + gamma));
        }
    }
    r.empirical_sup = sup;
    r.holder_norm = holder_seminorm_ambient(c.pts, normal_field, gamma);
    r.bound_A = std::pow(2.0, 3.0 + gamma / 2.0);
    if (r.holder_norm < 1e-300) {
        if (r.empirical_sup > 0.0)
            throw std::runtime_error("jet_constant_verify: constant nonzero field cannot be normal");
        r.ratio = 0.0;
    } else {
        r.ratio = r.empirical_sup / r.holder_norm;
    }
    r.ok = r.ratio <= r.bound_A;
    if (!r.ok)
        throw std::runtime_error(
            "jet_constant_verify: ratio exceeds the 2^(3+gamma/2) bound; input is not a "
            "normal field or the curve data is corrupt");
    return r;
}

WhitneyExtension::WhitneyExtension(const Curve& c, const VectorField& tangent,
                                   double gamma, const WhitneyParams& params) {
    if (tangent.size() != c.n)
        throw std::invalid_argument("WhitneyExtension: field size mismatch");
    const FrameField fr = tangent_normal(c);
    for (int i = 0; i < c.n; ++i) {
        const double scale = std::max(1.0, tangent[i].norm());
        if (std::abs(dot(tangent[i], fr.normal[i])) > 1e-10 * scale)
            throw std::invalid_argument("WhitneyExtension: input field is not tangent to the curve");
    }
    pts_ = c.pts;
    grads_.resize(c.n);
    for (int i = 0; i < c.n; ++i)
        grads_[i] = {-tangent[i].y, tangent[i].x};
    gamma_ = gamma;
    centroid_ = curve_centroid_of_markers(c);

    const double diam = curve_diameter(c);
    collar_ = params.collar_rel * diam;
    double max_r = 0.0;
    for (const auto& p : pts_) max_r = std::max(max_r, (p - centroid_).norm());
    cut_r0_ = max_r + 0.25 * collar_;
    cut_r1_ = max_r + 0.5 * collar_;

    const double gap = mean_marker_gap(c);
    const double root_half = max_r + collar_;
    const double min_side =
        std::max(params.min_side_rel * gap, 2.0 * root_half / std::pow(2.0, params.max_depth));
    band_ = 1.1 * 2.0 * min_side;

    // Build the quadtree.
    nodes_.clear();
    cells_.clear();
    nodes_.push_back({centroid_, root_half, -1, -1});
    std::vector<int> stack = {0};
    while (!stack.empty()) {
        const int ni = stack.back();
        stack.pop_back();
        const Vec2 ctr = nodes_[ni].center;
        const double half = nodes_[ni].half;
        const double side = 2.0 * half;
        int nearest = -1;
        const double dist = dist_to_markers(ctr, &nearest);
        const bool needs_split = side > params.whitney_factor * dist;
        if (needs_split && side > 2.0 * min_side) {
            const int c0 = static_cast<int>(nodes_.size());
            nodes_[ni].child0 = c0;
            const double qh = 0.5 * half;
            for (int cy = 0; cy < 2; ++cy)
                for (int cx = 0; cx < 2; ++cx)
                    nodes_.push_back({{ctr.x + (cx ? qh : -qh), ctr.y + (cy ? qh : -qh)},
                                      qh, -1, -1});
            for (int k = 0; k < 4; ++k) stack.push_back(c0 + k);
            continue;
        }
        // Leaf: keep it if it lies in the collar.  Nodes at the bottom size are
        // kept even when the side/distance ratio is still too large: dropping
        // them would leave a coverage hole along the curve where the partition
        // sum collapses, and the band fallback only spans the innermost ring.
        if (dist <= collar_ + side) {
            nodes_[ni].cell = static_cast<int>(cells_.size());
            cells_.push_back({ctr, half, nearest});
        }
    }

    // Sampled bounded-overlap check.
    for (int s = 0; s < 64; ++s) {
        const double ang = 2.0 * kPi * s / 64.0;
        const Vec2 probe = centroid_ + Vec2{std::cos(ang), std::sin(ang)} * (0.5 * max_r + 0.3 * collar_);
        if (overlap_at(probe) > params.max_overlap)
            throw std::runtime_error("WhitneyExtension: cube overlap bound exceeded");
    }
}

double WhitneyExtension::dist_to_markers(const Vec2& x, int* idx) const {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1;
    for (int i = 0; i < static_cast<int>(pts_.size()); ++i) {
        const double d = (x - pts_[i]).norm();
        if (d < best) {
            best = d;
            bi = i;
        }
    }
    if (idx) *idx = bi;
    return best;
}

void WhitneyExtension::gather(int node, const Vec2& x, std::vector<int>& out) const {
    const Node& nd = nodes_[node];
    const double dx = std::abs(x.x - nd.center.x);
    const double dy = std::abs(x.y - nd.center.y);
    if (std::max(dx, dy) > 2.5 * nd.half) return;
    if (nd.cell >= 0) {
        out.push_back(nd.cell);
        return;
    }
    if (nd.child0 >= 0)
        for (int k = 0; k < 4; ++k) gather(nd.child0 + k, x, out);
}

std::pair<double, Vec2> WhitneyExtension::eval_band(const Vec2& x) const {
    int seg = 0;
    double s = 0.0;
    Vec2 p;
    closest_on_polygon(pts_, x, seg, s, p);
    const int n = static_cast<int>(pts_.size());
    const Vec2 g = grads_[seg] * (1.0 - s) + grads_[(seg + 1) % n] * s;
    return {dot(g, x - p), g};
}

std::pair<double, Vec2> WhitneyExtension::eval(const Vec2& x) const {
    int seg = 0;
    double s = 0.0;
    Vec2 proj;
    const double dist = closest_on_polygon(pts_, x, seg, s, proj);
    if (dist < band_) return eval_band(x);

    std::vector<int> hit;
    hit.reserve(16);
    gather(0, x, hit);

    double wsum = 0.0, num = 0.0;
    Vec2 grad_wsum{0, 0}, grad_num{0, 0};
    for (int ci : hit) {
        const Cell& q = cells_[ci];
        const double a = 1.5 * q.half;  // bump support half-extent
        const double u = (x.x - q.center.x) / a;
        const double v = (x.y - q.center.y) / a;
        const double bu = bump(u), bv = bump(v);
        const double w = bu * bv;
        if (w == 0.0) continue;
        const Vec2 gw{bump_deriv(u) * bv / a, bu * bump_deriv(v) / a};
        const Vec2& gq = grads_[q.marker];
        const double pq = dot(gq, x - pts_[q.marker]);  // jet polynomial, value 0 at anchor
        wsum += w;
        grad_wsum += gw;
        num += pq * w;
        grad_num += gq * w + gw * pq;
    }

    // Virtual far cell carrying the zero polynomial: smooth cut beyond the collar.
    const Vec2 rel = x - centroid_;
    const double r = rel.norm();
    double rho = 0.0;
    Vec2 grad_rho{0, 0};
    if (r > cut_r0_) {
        const double t = (r - cut_r0_) / (cut_r1_ - cut_r0_);
        rho = smooth5(t);
        if (t > 0.0 && t < 1.0)
            grad_rho = rel * (smooth5_deriv(t) / ((cut_r1_ - cut_r0_) * r));
    }

    const double S = wsum + rho;
    if (S < 1e-14) return {0.0, {0.0, 0.0}};
    const Vec2 grad_S = grad_wsum + grad_rho;
    const double phi = num / S;
    const Vec2 grad_phi = grad_num / S - grad_S * (num / (S * S));
    return {phi, grad_phi};
}

Vec2 WhitneyExtension::field(const Vec2& x) const {
    const Vec2 g = eval(x).second;
    return {g.y, -g.x};
}

int WhitneyExtension::overlap_at(const Vec2& x) const {
    std::vector<int> hit;
    gather(0, x, hit);
    int count = 0;
    for (int ci : hit) {
        const Cell& q = cells_[ci];
        const double a = 1.5 * q.half;
        if (std::abs(x.x - q.center.x) < a && std::abs(x.y - q.center.y) < a) ++count;
    }
    return count;
}

}  // namespace pd
