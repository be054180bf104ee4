// Benchmark: OpenMP kernels vs their serial reference implementations.
// Verifies bitwise agreement, then reports median wall time and speedup.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "patchdyn/reference.hpp"

using namespace pd;

namespace {

double median_ms(const std::function<void()>& f, int reps) {
    std::vector<double> ms;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(ms.begin(), ms.end());
    return ms[ms.size() / 2];
}

void row(const char* name, int n, double serial, double parallel, bool equal) {
    std::printf("%-18s N=%-5d serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
                name, n, serial, parallel, serial / parallel,
                equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    bool all_equal = true;
    for (int n : {512, 2048, 8192}) {
        const Curve c = make_perturbed_circle(0.08, 5, n);
        const VectorField dX = derivative(c);
        const KernelSpec bs = KernelSpec::biot_savart();
        const int reps = n >= 8192 ? 3 : 5;

        {
            double a = 0.0, b = 0.0;
            const double ts = median_ms([&] { a = ref::holder_seminorm(dX, 0.5); }, reps);
            const double tp = median_ms([&] { b = holder_seminorm(dX, 0.5); }, reps);
            row("holder_seminorm", n, ts, tp, a == b);
            all_equal = all_equal && a == b;
        }
        {
            VectorField a, b;
            const double ts = median_ms([&] { a = ref::velocity_on_markers(c, bs); }, reps);
            const double tp = median_ms([&] { b = velocity_on_markers(c, bs); }, reps);
            bool eq = a.size() == b.size();
            for (int i = 0; eq && i < a.size(); ++i)
                eq = a[i].x == b[i].x && a[i].y == b[i].y;
            row("velocity", n, ts, tp, eq);
            all_equal = all_equal && eq;
        }
        {
            Curve moved = c;
            for (int i = 0; i < n; ++i)
                moved.pts[i] += Vec2{0.01 * std::sin(3.0 * c.theta(i)),
                                     0.005 * std::cos(c.theta(i))};
            double a = 0.0, b = 0.0;
            const double ts =
                median_ms([&] { a = ref::bilipschitz_constant(moved, c); }, reps);
            const double tp = median_ms([&] { b = bilipschitz_constant(moved, c); }, reps);
            row("bilipschitz", n, ts, tp, a == b);
            all_equal = all_equal && a == b;
        }
    }
    std::printf(all_equal ? "all comparisons bitwise-equal\n"
                          : "BITWISE MISMATCH detected\n");
    return all_equal ? 0 : 1;
}
