#include <omp.h>

#include "pixel_kernels.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

EscapeGrid filled_julia_base(const Poly& p, const GridSpec& grid, int maxiter, double radius) {
    grid.validate();
    if (maxiter < 0) throw DomainError("negative maxiter");
    const double r = radius > 0.0 ? radius : default_base_radius(p);
    EscapeGrid out{grid, maxiter, std::vector<std::uint32_t>(grid.size())};
    const auto& c = p.coeffs();
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long id = 0; id < n; ++id) {
        int i = static_cast<int>(id % grid.nx), j = static_cast<int>(id / grid.nx);
        out.iters[id] = detail::base_escape(c, grid.pixel(i, j), maxiter, r * r);
    }
    return out;
}

EscapeGrid fiber_filled_julia(const SkewProduct& f, const std::vector<Complex>& base_orbit,
                             const GridSpec& grid, int maxiter) {
    grid.validate();
    if (maxiter < 0) throw DomainError("negative maxiter");
    auto plan = detail::make_fiber_plan(f, base_orbit, maxiter);
    EscapeGrid out{grid, maxiter, std::vector<std::uint32_t>(grid.size())};
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long id = 0; id < n; ++id) {
        int i = static_cast<int>(id % grid.nx), j = static_cast<int>(id / grid.nx);
        out.iters[id] = detail::fiber_escape(plan, grid.pixel(i, j));
    }
    return out;
}

EscapeGrid fiber_filled_julia(const SkewProduct& f, Complex z, const GridSpec& grid, int maxiter) {
    std::vector<Complex> orbit{z};
    for (int k = 0; k < maxiter; ++k) {
        if (std::abs(orbit.back()) > f.base_radius()) break;
        orbit.push_back(f.base()(orbit.back()));
    }
    return fiber_filled_julia(f, orbit, grid, maxiter);
}

}  // namespace skewlab
