#pragma once

#include <string>
#include <vector>

#include "patchdyn/vec2.hpp"

namespace pd {

// Closed curve sampled at N uniform parameter angles theta_i = 2*pi*i/N.
// N must be even and >= 16 (trigonometric differentiation).
struct Curve {
    int n = 0;
    std::vector<Vec2> pts;
    double gamma = 0.5;  // Holder exponent carried for diagnostics

    double theta(int i) const { return 2.0 * kPi * static_cast<double>(i) / n; }
    double grid_spacing() const { return 2.0 * kPi / n; }
};

// N 2-vectors attached to the markers of a Curve.
struct VectorField {
    std::vector<Vec2> v;

    int size() const { return static_cast<int>(v.size()); }
    Vec2& operator[](int i) { return v[i]; }
    const Vec2& operator[](int i) const { return v[i]; }
};

enum class Preset { circle, ellipse, perturbed_circle };

struct ShapeParams {
    double radius = 1.0;    // circle
    double a = 2.0;         // ellipse semi-axes
    double b = 1.0;
    double eps = 0.1;       // perturbed circle r(theta) = 1 + eps*cos(m*theta)
    int m = 3;
};

Curve preset_shape(Preset p, const ShapeParams& sp, int n, double gamma = 0.5);
Curve make_circle(double radius, int n, double gamma = 0.5);
Curve make_ellipse(double a, double b, int n, double gamma = 0.5);
Curve make_perturbed_circle(double eps, int m, int n, double gamma = 0.5);

// dX/dtheta at each marker by trigonometric differentiation; exact for
// band-limited samples.
VectorField derivative(const Curve& c);

// Same spectral differentiation applied to an arbitrary periodic field on the
// curve's parameter grid.
VectorField spectral_derivative(const VectorField& f);

struct FrameField {
    VectorField tangent;  // unit tangent
    VectorField normal;   // outward unit normal (tangent rotated by -90 deg)
};

FrameField tangent_normal(const Curve& c);

// sup over marker pairs of |F_i - F_j| / |e^{i theta_i} - e^{i theta_j}|^gamma.
double holder_seminorm(const VectorField& f, double gamma);

// Ambient-distance version over curve points (the Lemma 1 seminorm).
double holder_seminorm_ambient(const std::vector<Vec2>& pts, const VectorField& f,
                               double gamma);

// min over pairs of |X_i - X_j| / |A_i - A_j|, A = reference markers.
// Returns 0 if any current pair coincides (blow-up flag).
double bilipschitz_constant(const Curve& current, const Curve& reference);

// Signed area by the spectral Green identity (1/2) * integral (x y' - y x').
double area(const Curve& c);

double curve_diameter(const Curve& c);
Vec2 curve_centroid_of_markers(const Curve& c);

// Min and mean distances between adjacent markers.
double min_marker_gap(const Curve& c);
double mean_marker_gap(const Curve& c);

// Polygonal self-intersection test over the marker polygon.
bool is_simple(const Curve& c);

// Crossing-number membership test against the marker polygon.
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p);

// Markers of the trigonometric interpolant on a factor-times finer uniform
// parameter grid; exact for band-limited data.
Curve trig_refine(const Curve& c, int factor);

// Uniform-in-arclength resampling via periodic cubic spline interpolation.
// Throws if the resampled polygon self-intersects or n_new is invalid.
Curve arc_resample(const Curve& c, int n_new);

// CSV format: header "theta,x,y", one row per marker.
void write_curve_csv(const Curve& c, const std::string& path);
Curve read_curve_csv(const std::string& path, double gamma = 0.5);

}  // namespace pd
