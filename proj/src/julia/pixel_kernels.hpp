#pragma once

// Per-pixel kernels shared by the parallel and the serial grid drivers.

#include <cstdint>
#include <vector>

#include "skewlab/julia.hpp"

namespace skewlab::detail {

inline std::uint32_t base_escape(const std::vector<Complex>& c, Complex z, int maxiter, double r2) {
    const int d = static_cast<int>(c.size()) - 1;
    for (int n = 0; n <= maxiter; ++n) {
        if (std::norm(z) > r2) return static_cast<std::uint32_t>(n);
        if (n == maxiter) break;
        Complex acc = c[d];
        for (int k = d - 1; k >= 0; --k) acc = acc * z + c[k];
        z = acc;
    }
    return EscapeGrid::kBounded;
}

// Fiber maps along a fixed base orbit.
struct FiberPlan {
    std::vector<std::vector<Complex>> maps;  // maps[k] = q(z_k, .)
    int base_escape = -1;                    // first k with z_k outside the base radius
    double r2 = 0.0;
    int maxiter = 0;
};

FiberPlan make_fiber_plan(const SkewProduct& f, const std::vector<Complex>& base_orbit, int maxiter);

inline std::uint32_t fiber_escape(const FiberPlan& plan, Complex w) {
    for (int n = 0; n <= plan.maxiter; ++n) {
        if (n == plan.base_escape || std::norm(w) > plan.r2) return static_cast<std::uint32_t>(n);
        if (n == plan.maxiter) break;
        const auto& c = plan.maps[n];
        Complex acc = c.back();
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) acc = acc * w + c[k];
        w = acc;
    }
    return EscapeGrid::kBounded;
}

}  // namespace skewlab::detail
