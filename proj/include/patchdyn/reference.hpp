#pragma once

#include "patchdyn/curve.hpp"
#include "patchdyn/kernel.hpp"
#include "patchdyn/velocity.hpp"

// Straightforward serial implementations of the O(N^2) kernels, kept as the
// ground truth for the OpenMP versions and for the benchmark comparison.
namespace pd::ref {

double holder_seminorm(const VectorField& f, double gamma);
double bilipschitz_constant(const Curve& current, const Curve& reference);
VectorField velocity_on_markers(const Curve& c, const KernelSpec& spec);
double jet_inequality_sup(const Curve& c, const VectorField& normal_field, double gamma);

}  // namespace pd::ref
